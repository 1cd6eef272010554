#pragma once

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/numeric.hpp"
#include "ordlat/ordering.hpp"
#include "ordlat/strength.hpp"

namespace ordlat {

// Numeric table with `#`-prefixed metadata lines, a header row and one row
// per record. Numbers are written with 12 significant digits.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& os) const {
    for (const auto& c : comments) os << "# " << c << '\n';
    for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << numeric::format12(row[j]);
      os << '\n';
    }
  }

  std::string str() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write " + path);
    write(out);
  }

  static CsvTable parse(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
        continue;
      }
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (!have_header) {
        t.header = std::move(cells);
        have_header = true;
        continue;
      }
      require(cells.size() == t.header.size(), ErrorKind::InvalidArgument,
              "CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                  std::to_string(t.header.size()));
      std::vector<double> row;
      for (const auto& c : cells) {
        char* end = nullptr;
        const double v = std::strtod(c.c_str(), &end);
        require(end != c.c_str() && *end == '\0', ErrorKind::InvalidArgument,
                "not a number in CSV: '" + c + "'");
        row.push_back(v);
      }
      t.rows.push_back(std::move(row));
    }
    require(have_header, ErrorKind::InvalidArgument, "CSV has no header row");
    return t;
  }

  static CsvTable parse(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
  }
};

// theta, g_1, g_2, ... for traces sharing one grid.
inline CsvTable traces_to_csv(const std::vector<FunctionTrace>& traces) {
  CsvTable t;
  t.header.push_back("theta");
  for (const auto& tr : traces) t.header.push_back("g" + std::to_string(tr.r) + "_" + std::string(to_string(tr.function)));
  if (traces.empty()) return t;
  for (std::size_t i = 0; i < traces.front().theta.size(); ++i) {
    std::vector<double> row{traces.front().theta[i]};
    for (const auto& tr : traces) row.push_back(tr.value[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

// delta, m_1..m_k, degenerate (0/1).
inline CsvTable sweep_to_csv(const SweepTable& sweep) {
  CsvTable t;
  t.header.push_back("delta_" + std::to_string(sweep.index));
  const std::size_t k = sweep.rows.empty() ? 0 : sweep.rows.front().strengths.size();
  for (std::size_t r = 1; r <= k; ++r) t.header.push_back("m_" + std::to_string(r));
  t.header.push_back("degenerate");
  for (const auto& row : sweep.rows) {
    std::vector<double> cells{row.value};
    cells.insert(cells.end(), row.strengths.begin(), row.strengths.end());
    cells.push_back(row.degenerate ? 1.0 : 0.0);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// item, step_parameter (NaN if none), midpoint_value, rank; items 1-based.
inline CsvTable ordering_to_csv(const OrderingRecord& rec) {
  CsvTable t;
  t.header = {"item", "step_parameter", "midpoint_value", "rank"};
  for (std::size_t i = 0; i < rec.midpoint_values.size(); ++i) {
    const double param = rec.step_parameters[i].value_or(std::numeric_limits<double>::quiet_NaN());
    t.rows.push_back({static_cast<double>(i + 1), param, rec.midpoint_values[i],
                      static_cast<double>(rec.rank_of(i) + 1)});
  }
  return t;
}

}  // namespace ordlat
