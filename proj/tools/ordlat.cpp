// ordlat command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ordlat/ordlat.hpp"

namespace {

using namespace ordlat;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct GridOptions {
  double lower = -10.0;
  double upper = 10.0;
  std::size_t points = 2001;
  std::size_t dim = 1;  // 1-based on the command line
  std::vector<double> fixed;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--lower", lower, "Grid lower bound")->capture_default_str();
    cmd->add_option("--upper", upper, "Grid upper bound")->capture_default_str();
    cmd->add_option("--points", points, "Grid point count")->capture_default_str();
    cmd->add_option("--dim", dim, "Trait dimension to vary (1-based)")->capture_default_str();
    cmd->add_option("--fixed", fixed, "Values of the other trait coordinates")->delimiter(',');
  }

  ThetaGrid grid() const {
    require(dim >= 1, ErrorKind::InvalidArgument, "--dim is 1-based");
    ThetaGrid g{lower, upper, points, dim - 1, fixed};
    g.validate();
    return g;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "grid=[" << numeric::format12(lower) << "," << numeric::format12(upper) << "] points=" << points
       << " dim=" << dim;
    return os.str();
  }
};

struct IntegrationOptions {
  double mean = 0.0;
  double sd = 1.0;
  std::string method = "gauss-hermite";
  std::size_t nodes = 101;
  std::size_t trapezoid_points = 100001;
  double range_sd = 8.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mean", mean, "Population mean")->capture_default_str();
    cmd->add_option("--sd", sd, "Population standard deviation")->capture_default_str();
    cmd->add_option("--quadrature", method, "gauss-hermite or trapezoid")->capture_default_str();
    cmd->add_option("--nodes", nodes, "Gauss-Hermite nodes")->capture_default_str();
    cmd->add_option("--trapezoid-points", trapezoid_points, "Trapezoid points")->capture_default_str();
    cmd->add_option("--range-sd", range_sd, "Trapezoid half-width in standard deviations")->capture_default_str();
  }

  Population population() const {
    Population p{mean, sd};
    p.validate();
    return p;
  }

  QuadratureConfig quadrature() const {
    QuadratureConfig q{parse_quadrature(method), nodes, trapezoid_points, range_sd};
    q.validate();
    return q;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "population=normal(" << numeric::format12(mean) << "," << numeric::format12(sd) << ") quadrature=" << method
       << " nodes=" << nodes << " trapezoid_points=" << trapezoid_points << " range_sd=" << numeric::format12(range_sd);
    return os.str();
  }
};

// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string spec_comment(const Model& m) {
  nlohmann::json j = to_json(m);
  return "model=" + j.dump();
}

std::vector<LineSeries> trace_series(const std::vector<FunctionTrace>& traces) {
  std::vector<LineSeries> out;
  for (const auto& t : traces)
    out.push_back({std::string(to_string(t.function)) + " r=" + std::to_string(t.r), t.theta, t.value});
  return out;
}

// ---------------------------------------------------------------------------

int run_eval(const std::string& spec, const std::vector<double>& theta, const std::string& output) {
  const Model m = load_model(spec);
  const TraitPoint t(theta);
  const auto p = category_probabilities(m, t);
  CsvTable table;
  table.comments.push_back(spec_comment(m));
  std::string coords;
  for (std::size_t d = 0; d < theta.size(); ++d) coords += (d ? "," : "") + numeric::format12(theta[d]);
  table.comments.push_back("theta=" + coords);
  table.header = {"category", "probability"};
  for (std::size_t r = 0; r < p.size(); ++r) table.rows.push_back({static_cast<double>(r), p[r]});
  emit(output, table.str());
  return 0;
}

int run_check(const std::string& spec, const GridOptions& go, const std::string& output) {
  const Model m = load_model(spec);
  const ThetaGrid grid = go.grid();
  std::ostringstream os;
  os << "# " << spec_comment(m) << '\n' << "# " << go.describe() << '\n';
  for (Concept c : {Concept::split, Concept::paired, Concept::conditional}) write_report(os, check(m, c, grid));
  const auto f = paired_formulations(m, grid);
  os << "paired formulations agree: " << (f.agree() ? "yes" : "no") << '\n';
  if (const auto* bock = std::get_if<BockModel>(&m))
    os << "ordered slopes: " << (bock_criterion(*bock) ? "yes" : "no") << '\n';
  const auto h = verify_hierarchy(m, grid);
  os << "hierarchy violation: " << (h.violation ? "yes" : "no") << '\n';
  ConceptTable table;
  table.add(std::string(family_name(m)), h);
  table.write(os);
  emit(output, os.str());
  return 0;
}

int run_strength(const std::string& spec, const std::string& function, std::size_t r, const GridOptions& go,
                 const IntegrationOptions& io, const std::string& output, const std::string& svg) {
  const Model m = load_model(spec);
  const DefiningFunction g = parse_defining_function(function);
  const ThetaGrid grid = go.grid();
  const auto pop = io.population();
  const auto quad = io.quadrature();
  std::vector<std::size_t> indices;
  if (r > 0) indices.push_back(r);
  else
    for (std::size_t j = 1; j <= max_category(m); ++j) indices.push_back(j);
  CsvTable table;
  table.comments = {spec_comment(m), "function=" + std::string(to_string(g)), io.describe()};
  table.header = {"r", "m", "cross_check"};
  std::vector<FunctionTrace> traces;
  for (std::size_t j : indices) {
    const auto s = strength_measure(m, g, j, pop, quad, grid);
    table.rows.push_back({static_cast<double>(j), s.m, s.cross_check});
    traces.push_back(trace_g(m, g, j, grid));
  }
  emit(output, table.str());
  if (!svg.empty()) save_svg(svg, "defining functions (" + std::string(to_string(g)) + ")", "theta", trace_series(traces));
  return 0;
}

SweepTable sweep_with_comments(const CumulativeModel& base, std::size_t index, double low, double high, std::size_t steps,
                               const IntegrationOptions& io, CsvTable& table) {
  const auto sweep = sweep_threshold(base, index, low, high, steps, io.population(), io.quadrature());
  table = sweep_to_csv(sweep);
  table.comments = {spec_comment(base),
                    "sweep threshold " + std::to_string(index) + " over linspace(" + numeric::format12(low) + "," +
                        numeric::format12(high) + "," + std::to_string(steps) + ")",
                    "function=split", io.describe()};
  return sweep;
}

std::vector<LineSeries> sweep_series(const SweepTable& sweep) {
  const std::size_t k = sweep.rows.front().strengths.size();
  std::vector<LineSeries> out(k);
  for (std::size_t r = 0; r < k; ++r) {
    out[r].label = "m_" + std::to_string(r + 1);
    for (const auto& row : sweep.rows) {
      out[r].x.push_back(row.value);
      out[r].y.push_back(row.strengths[r]);
    }
  }
  return out;
}

const CumulativeModel& require_cumulative(const Model& m, const char* what) {
  const auto* cm = std::get_if<CumulativeModel>(&m);
  if (!cm) fail(ErrorKind::UnsupportedModel, std::string(what) + " needs a cumulative model, got " + std::string(family_name(m)));
  return *cm;
}

int run_sweep(const std::string& spec, std::size_t index, double low, double high, std::size_t steps,
              const IntegrationOptions& io, const std::string& output, const std::string& svg) {
  const Model m = load_model(spec);
  CsvTable table;
  const auto sweep = sweep_with_comments(require_cumulative(m, "sweep"), index, low, high, steps, io, table);
  emit(output, table.str());
  if (!svg.empty())
    save_svg(svg, "strength across threshold " + std::to_string(index), "delta_" + std::to_string(index),
             sweep_series(sweep));
  return 0;
}

int run_collapse(const std::string& spec, std::size_t r, const GridOptions& go, double flat, const std::string& output) {
  const Model m = load_model(spec);
  const ThetaGrid grid = go.grid();
  const Model collapsed = collapse_categories(m, r);
  emit(output, serialize_model(collapsed));
  // Flatness before and after goes to stderr when the model goes to stdout.
  std::ostream& diag = output.empty() ? std::cerr : std::cout;
  auto report = [&](const char* label, const Model& model) {
    for (const auto& row : flatness_diagnostic(model, grid, flat))
      diag << label << " r=" << row.r << " range=" << numeric::format12(row.range) << (row.flagged ? " flat" : "") << '\n';
  };
  report("before", m);
  report("after", collapsed);
  return 0;
}

int run_order(const std::vector<std::string>& specs, std::size_t r, const GridOptions& go, const std::string& output) {
  ItemSet set;
  for (const auto& s : specs) set.items.push_back(load_model(s));
  const auto rec = invariant_step_ordering(set, r, go.grid());
  CsvTable table = ordering_to_csv(rec);
  table.comments = {"step=" + std::to_string(r), go.describe(), std::string("invariant=") + (rec.invariant ? "true" : "false")};
  emit(output, table.str());
  return 0;
}

int run_counterexample(const std::string& target, std::size_t k, std::uint64_t seed, std::size_t budget,
                       const std::string& output) {
  SearchConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  cfg.budget = budget;
  const auto c = find_counterexample(parse_separation(target), cfg);
  emit(output, serialize_model(c.model));
  std::ostream& diag = output.empty() ? std::cerr : std::cout;
  diag << "draws=" << c.draws << " paired=" << c.verdicts.paired << " conditional=" << c.verdicts.conditional
       << " split=" << c.verdicts.split << '\n';
  return 0;
}

// Threshold settings for the regenerated figures; the CSV comments repeat them.
const std::vector<double> kSeparated{-2.0, 0.0, 2.0};
const std::vector<double> kNearTie{-2.0, -0.05, 0.05};
constexpr std::size_t kCollapseIndex = 2;
constexpr double kSweepFixed = -1.0;
constexpr double kSweepLow = -1.0;
constexpr double kSweepHigh = 5.0;
constexpr std::size_t kSweepSteps = 61;

void figure2(const std::filesystem::path& dir, const GridOptions& go, bool svg) {
  const ThetaGrid grid = go.grid();
  const Model separated = make_cumulative(kLogistic, kSeparated);
  const Model near_tie = make_cumulative(kLogistic, kNearTie);
  const Model collapsed = collapse_categories(near_tie, kCollapseIndex);
  const std::pair<const char*, const Model*> panels[] = {
      {"figure2_separated", &separated}, {"figure2_near_tie", &near_tie}, {"figure2_collapsed", &collapsed}};
  for (const auto& [name, model] : panels) {
    std::vector<FunctionTrace> traces;
    for (std::size_t r = 1; r <= max_category(*model); ++r) traces.push_back(trace_g(*model, DefiningFunction::adjacent, r, grid));
    CsvTable table = traces_to_csv(traces);
    table.comments = {std::string("adjacent-category functions g_r = P(Y=r | Y in {r-1,r})"), spec_comment(*model), go.describe()};
    if (model == &collapsed)
      table.comments.push_back("collapsed threshold " + std::to_string(kCollapseIndex) + " of the near-tie model");
    table.save((dir / (std::string(name) + ".csv")).string());
    if (svg) save_svg((dir / (std::string(name) + ".svg")).string(), name, "theta", trace_series(traces));
  }
}

void figure3(const std::filesystem::path& dir, const IntegrationOptions& io, bool svg) {
  CsvTable table;
  const auto base = make_cumulative(kLogistic, {kSweepFixed, kSweepHigh});
  const auto sweep = sweep_with_comments(base, 2, kSweepLow, kSweepHigh, kSweepSteps, io, table);
  table.comments.insert(table.comments.begin(), "strength of the split functions, first threshold fixed at " +
                                                    numeric::format12(kSweepFixed));
  table.save((dir / "figure3_sweep.csv").string());
  if (svg) save_svg((dir / "figure3_sweep.svg").string(), "figure3_sweep", "delta_2", sweep_series(sweep));
}

int run_figures(const std::string& which, const std::string& out_dir, const GridOptions& go, const IntegrationOptions& io,
                bool svg) {
  require(which == "2" || which == "3" || which == "all", ErrorKind::InvalidArgument,
          "--which must be 2, 3 or all");
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec && std::filesystem::is_directory(dir), ErrorKind::InvalidArgument, "cannot create " + out_dir);
  if (which != "3") figure2(dir, go, svg);
  if (which != "2") figure3(dir, io, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordinality checks and strength measures for polytomous item response models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ordlat 1.0.0");

  std::string spec, output, svg;
  GridOptions go;
  IntegrationOptions io;

  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec, "Model-spec JSON file")->required();
  };
  auto add_output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", output, "Output file (default stdout)"); };

  std::vector<double> theta{0.0};
  auto* eval = app.add_subcommand("eval", "Print the category probabilities at one trait point");
  add_spec(eval);
  eval->add_option("--theta", theta, "Trait coordinates")->delimiter(',')->capture_default_str();
  add_output(eval);

  auto* chk = app.add_subcommand("check", "Check the split, paired and conditional concepts on a grid");
  add_spec(chk);
  go.add_to(chk);
  add_output(chk);

  std::string function = "split";
  std::size_t r = 0;
  auto* str = app.add_subcommand("strength", "Strength measures m_r as CSV");
  add_spec(str);
  str->add_option("--function", function, "split, adjacent or conditional")->capture_default_str();
  str->add_option("-r,--index", r, "Comparison index (default: all)");
  go.add_to(str);
  io.add_to(str);
  add_output(str);
  str->add_option("--svg", svg, "Also plot the defining functions");

  std::size_t index = 2, steps = 61;
  double low = -1.0, high = 5.0;
  auto* swp = app.add_subcommand("sweep", "Strength measures while one threshold moves");
  add_spec(swp);
  swp->add_option("--threshold", index, "Threshold to move (1-based)")->capture_default_str();
  swp->add_option("--from", low, "First value")->capture_default_str();
  swp->add_option("--to", high, "Last value")->capture_default_str();
  swp->add_option("--steps", steps, "Number of values")->capture_default_str();
  io.add_to(swp);
  add_output(swp);
  swp->add_option("--svg", svg, "Also plot the sweep");

  std::size_t collapse_r = 1;
  double flat = kDefaultFlatness;
  auto* col = app.add_subcommand("collapse", "Fuse categories r-1 and r of a cumulative model");
  add_spec(col);
  col->add_option("-r,--index", collapse_r, "Threshold to drop")->required();
  col->add_option("--flat", flat, "Flatness threshold on the adjacent functions")->capture_default_str();
  go.add_to(col);
  add_output(col);

  std::vector<std::string> item_specs;
  std::size_t step = 1;
  auto* ord = app.add_subcommand("order", "Invariant ordering of items by one step function");
  ord->add_option("specs", item_specs, "Model-spec files, one per item")->required();
  ord->add_option("-r,--step", step, "Step index")->capture_default_str();
  go.add_to(ord);
  add_output(ord);

  std::string target = "split-not-conditional";
  std::size_t k = 2, budget = 100000;
  std::uint64_t seed = 0;
  auto* cex = app.add_subcommand("counterexample", "Search for a table model separating two concepts");
  cex->add_option("--target", target, "split-not-conditional or conditional-not-paired")->capture_default_str();
  cex->add_option("-k", k, "Highest category")->capture_default_str();
  cex->add_option("--seed", seed, "Random seed")->capture_default_str();
  cex->add_option("--budget", budget, "Maximum draws")->capture_default_str();
  add_output(cex);

  std::string which = "all", out_dir = ".";
  bool with_svg = false;
  auto* fig = app.add_subcommand("figures", "Regenerate the trace and sweep CSVs from built-in settings");
  fig->add_option("--which", which, "2, 3 or all")->capture_default_str();
  fig->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  fig->add_flag("--svg", with_svg, "Also write SVG plots");
  go.add_to(fig);
  io.add_to(fig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*eval) return run_eval(spec, theta, output);
    if (*chk) return run_check(spec, go, output);
    if (*str) return run_strength(spec, function, r, go, io, output, svg);
    if (*swp) return run_sweep(spec, index, low, high, steps, io, output, svg);
    if (*col) return run_collapse(spec, collapse_r, go, flat, output);
    if (*ord) return run_order(item_specs, step, go, output);
    if (*cex) return run_counterexample(target, k, seed, budget, output);
    if (*fig) return run_figures(which, out_dir, go, io, with_svg);
  } catch (const Error& e) {
    std::cerr << "ordlat: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "ordlat: internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInvalid;
}
