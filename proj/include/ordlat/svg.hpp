#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/numeric.hpp"

namespace ordlat {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal 800x600 line plot: axes box, min/max tick labels, one polyline
// per series, legend top-left. Non-finite points are skipped.
inline void write_svg(std::ostream& os, const std::string& title, const std::string& x_label,
                      const std::vector<LineSeries>& series) {
  constexpr double kWidth = 800, kHeight = 600, kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x0 < x1)) x0 = 0, x1 = 1;
  if (!(y0 < y1)) y1 = y0 + 1;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  static const char* dashes[] = {"", "8,4", "2,3", "8,3,2,3", "12,4", "4,4"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
     << title << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << text << "</text>\n";
  };
  label(kLeft, kHeight - kBottom + 18, numeric::format12(x0), "start");
  label(kWidth - kRight, kHeight - kBottom + 18, numeric::format12(x1), "end");
  label(kLeft - 6, kHeight - kBottom, numeric::format12(y0), "end");
  label(kLeft - 6, kTop + 10, numeric::format12(y1), "end");
  label(kLeft + pw / 2, kHeight - 15, x_label, "middle");
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << colors[k % 6] << "\" stroke-width=\"2\"";
    if (*dashes[k % 6]) os << " stroke-dasharray=\"" << dashes[k % 6] << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
        os << numeric::format12(px(s.x[i])) << ',' << numeric::format12(py(s.y[i])) << ' ';
    os << "\"/>\n";
    const double ly = kTop + 20 + 18 * static_cast<double>(k);
    os << "<line x1=\"" << kLeft + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + 40 << "\" y2=\"" << ly
       << "\" stroke=\"" << colors[k % 6] << "\" stroke-width=\"2\"";
    if (*dashes[k % 6]) os << " stroke-dasharray=\"" << dashes[k % 6] << "\"";
    os << "/>\n";
    label(kLeft + 46, ly + 4, s.label, "start");
  }
  os << "</svg>\n";
}

inline void save_svg(const std::string& path, const std::string& title, const std::string& x_label,
                     const std::vector<LineSeries>& series) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write " + path);
  write_svg(out, title, x_label, series);
}

}  // namespace ordlat
