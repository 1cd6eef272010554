#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/grid.hpp"
#include "ordlat/links.hpp"
#include "ordlat/models.hpp"

namespace ordlat {

// The three ordinality concepts: monotonicity in theta of
//   split:       P(Y >= r)
//   paired:      pi_r / pi_s for every s < r
//   conditional: P(Y >= r | Y >= r-1)
enum class Concept { split, paired, conditional };

inline std::string_view to_string(Concept c) {
  switch (c) {
    case Concept::split: return "split";
    case Concept::paired: return "paired";
    case Concept::conditional: return "conditional";
  }
  return "?";
}

inline constexpr double kStrictTolerance = 1e-12;

struct ComparisonVerdict {
  std::size_t r = 0;
  std::optional<std::size_t> s;  // lower category, paired concept only
  MonotonicityVerdict verdict;
};

struct OrdinalityReport {
  Concept which = Concept::split;
  std::vector<ComparisonVerdict> comparisons;
  bool overall = false;
  // Sign of closed-form derivatives where the family has them; empty otherwise.
  std::optional<bool> analytic_increasing;

  const ComparisonVerdict* find(std::size_t r, std::optional<std::size_t> s = {}) const {
    for (const auto& c : comparisons)
      if (c.r == r && c.s == s) return &c;
    return nullptr;
  }
};

namespace detail {

// Closed-form derivatives (in the active trait) of each comparison's
// monotone transform, evaluated on the grid. Only families where the
// derivative is simple enough to be worth the second opinion take part.
inline std::optional<bool> analytic_sign(const Model& model, Concept which,
                                         const std::vector<TraitPoint>& traits,
                                         std::size_t active) {
  const std::size_t k = max_category(model);
  auto log_density_ok = [&](Link f, double x) { return std::isfinite(log_pdf(f, x)); };

  if (which == Concept::split) {
    if (const auto* cm = std::get_if<CumulativeModel>(&model)) {
      for (const auto& t : traits)
        for (double d : cm->thresholds)
          if (!log_density_ok(cm->link, t[0] - d)) return false;
      return true;
    }
    return std::nullopt;
  }
  if (which == Concept::conditional) {
    if (const auto* sm = std::get_if<SequentialModel>(&model)) {
      for (const auto& t : traits)
        for (double d : sm->steps)
          if (!log_density_ok(sm->link, t[0] - d)) return false;
      return true;
    }
    return std::nullopt;
  }
  // paired: every pair ratio is a product of adjacent ones, so a positive
  // derivative for each adjacent log-ratio settles all pairs.
  if (const auto* am = std::get_if<AdjacentModel>(&model)) {
    for (const auto& t : traits)
      for (double d : am->steps) {
        const double x = t[0] - d;
        const double log_slope = log_pdf(am->link, x) - log_cdf(am->link, x) - log_sf(am->link, x);
        if (!std::isfinite(log_slope)) return false;
      }
    return true;
  }
  if (const auto* md = std::get_if<MultidimAdjacentModel>(&model)) {
    for (std::size_t r = 1; r <= k; ++r)
      if (!(md->weights[r - 1][active] > 0.0)) return false;
    return true;
  }
  if (const auto* bm = std::get_if<BockModel>(&model)) {
    for (std::size_t r = 1; r <= k; ++r)
      for (std::size_t s = 0; s < r; ++s)
        if (!(bm->slopes[r] - bm->slopes[s] > 0.0)) return false;
    return true;
  }
  return std::nullopt;
}

inline bool uses_closed_form_pairs(const Model& model) {
  return std::holds_alternative<AdjacentModel>(model) ||
         std::holds_alternative<MultidimAdjacentModel>(model) ||
         std::holds_alternative<BockModel>(model) || std::holds_alternative<IRTreeModel>(model);
}

inline OrdinalityReport finish(Concept which, std::vector<ComparisonVerdict> comparisons) {
  OrdinalityReport report;
  report.which = which;
  report.overall = !comparisons.empty() &&
                   std::all_of(comparisons.begin(), comparisons.end(),
                               [](const ComparisonVerdict& c) { return c.verdict.increasing(); });
  report.comparisons = std::move(comparisons);
  return report;
}

inline std::vector<double> active_values(const std::vector<TraitPoint>& traits, std::size_t d) {
  std::vector<double> out;
  out.reserve(traits.size());
  for (const auto& t : traits) out.push_back(t[d]);
  return out;
}

}  // namespace detail

// Split concept. Each tail probability is judged on the logit scale, which
// is a strictly increasing transform and does not saturate in the tails.
inline OrdinalityReport check_split(const Model& model, const ThetaGrid& grid,
                                    double tolerance = kStrictTolerance) {
  const auto traits = grid.traits_for(model);
  const auto thetas = detail::active_values(traits, grid.active_dim);
  const std::size_t k = max_category(model);
  std::vector<std::vector<double>> series(k + 1, std::vector<double>(traits.size()));
  for (std::size_t i = 0; i < traits.size(); ++i) {
    const LogProfile p = log_profile(model, traits[i]);
    for (std::size_t r = 1; r <= k; ++r) series[r][i] = p.split_logit(r);
  }
  std::vector<ComparisonVerdict> out;
  for (std::size_t r = 1; r <= k; ++r)
    out.push_back({r, std::nullopt, classify(thetas, series[r], tolerance)});
  auto report = detail::finish(Concept::split, std::move(out));
  report.analytic_increasing = detail::analytic_sign(model, Concept::split, traits, grid.active_dim);
  return report;
}

// Conditional concept, judged on the logit of P(Y >= r | Y >= r-1).
inline OrdinalityReport check_conditional(const Model& model, const ThetaGrid& grid,
                                          double tolerance = kStrictTolerance) {
  const auto traits = grid.traits_for(model);
  const auto thetas = detail::active_values(traits, grid.active_dim);
  const std::size_t k = max_category(model);
  const auto* sequential = std::get_if<SequentialModel>(&model);
  std::vector<std::vector<double>> series(k + 1, std::vector<double>(traits.size()));
  for (std::size_t i = 0; i < traits.size(); ++i) {
    if (sequential) {
      for (std::size_t r = 1; r <= k; ++r)
        series[r][i] = logit(sequential->link, traits[i][0] - sequential->steps[r - 1]);
      continue;
    }
    const LogProfile p = log_profile(model, traits[i]);
    for (std::size_t r = 1; r <= k; ++r) series[r][i] = p.continuation_logit(r);
  }
  std::vector<ComparisonVerdict> out;
  for (std::size_t r = 1; r <= k; ++r)
    out.push_back({r, std::nullopt, classify(thetas, series[r], tolerance)});
  auto report = detail::finish(Concept::conditional, std::move(out));
  report.analytic_increasing =
      detail::analytic_sign(model, Concept::conditional, traits, grid.active_dim);
  return report;
}

// Paired concept: log(pi_r / pi_s) for all s < r.
inline OrdinalityReport check_paired(const Model& model, const ThetaGrid& grid,
                                     double tolerance = kStrictTolerance) {
  const auto traits = grid.traits_for(model);
  const auto thetas = detail::active_values(traits, grid.active_dim);
  const std::size_t k = max_category(model);
  const bool closed = detail::uses_closed_form_pairs(model);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t r = 1; r <= k; ++r)
    for (std::size_t s = 0; s < r; ++s) pairs.emplace_back(r, s);

  std::vector<std::vector<double>> series(pairs.size(), std::vector<double>(traits.size()));
  for (std::size_t i = 0; i < traits.size(); ++i) {
    if (closed) {
      for (std::size_t j = 0; j < pairs.size(); ++j)
        series[j][i] = log_pair_ratio(model, traits[i], pairs[j].first, pairs[j].second);
      continue;
    }
    const LogProfile p = log_profile(model, traits[i]);
    for (std::size_t j = 0; j < pairs.size(); ++j)
      series[j][i] = p.log_probs[pairs[j].first] - p.log_probs[pairs[j].second];
  }
  std::vector<ComparisonVerdict> out;
  for (std::size_t j = 0; j < pairs.size(); ++j)
    out.push_back({pairs[j].first, pairs[j].second, classify(thetas, series[j], tolerance)});
  auto report = detail::finish(Concept::paired, std::move(out));
  report.analytic_increasing = detail::analytic_sign(model, Concept::paired, traits, grid.active_dim);
  return report;
}

inline OrdinalityReport check(const Model& model, Concept which, const ThetaGrid& grid,
                              double tolerance = kStrictTolerance) {
  switch (which) {
    case Concept::split: return check_split(model, grid, tolerance);
    case Concept::paired: return check_paired(model, grid, tolerance);
    case Concept::conditional: return check_conditional(model, grid, tolerance);
  }
  return {};
}

// Overall verdicts of the three equivalent formulations of the paired
// concept: all ratios pi_r/pi_s, the pairwise conditionals
// P(Y = r | Y in {s, r}), and the adjacent-only conditionals.
struct PairedFormulations {
  bool ratios = false;
  bool pair_conditionals = false;
  bool adjacent_conditionals = false;

  bool agree() const {
    return ratios == pair_conditionals && pair_conditionals == adjacent_conditionals;
  }
};

inline PairedFormulations paired_formulations(const Model& model, const ThetaGrid& grid,
                                              double tolerance = kStrictTolerance) {
  PairedFormulations out;
  out.ratios = check_paired(model, grid, tolerance).overall;

  const auto traits = grid.traits_for(model);
  const auto thetas = detail::active_values(traits, grid.active_dim);
  const std::size_t k = max_category(model);
  std::vector<std::vector<double>> profile_probs;
  profile_probs.reserve(traits.size());
  for (const auto& t : traits) profile_probs.push_back(log_profile(model, t).log_probs);

  // logit of pi_r / (pi_s + pi_r), formed from the two conditional
  // probabilities rather than from the ratio.
  auto pair_conditional_logit = [](double log_r, double log_s) {
    const double total = numeric::logaddexp(log_r, log_s);
    return (log_r - total) - (log_s - total);
  };
  auto judge = [&](std::size_t r, std::size_t s) {
    std::vector<double> g(traits.size());
    for (std::size_t i = 0; i < traits.size(); ++i)
      g[i] = pair_conditional_logit(profile_probs[i][r], profile_probs[i][s]);
    return classify(thetas, g, tolerance).increasing();
  };

  out.pair_conditionals = true;
  for (std::size_t r = 1; r <= k && out.pair_conditionals; ++r)
    for (std::size_t s = 0; s < r && out.pair_conditionals; ++s) out.pair_conditionals = judge(r, s);
  out.adjacent_conditionals = true;
  for (std::size_t r = 1; r <= k && out.adjacent_conditionals; ++r)
    out.adjacent_conditionals = judge(r, r - 1);
  return out;
}

inline bool check_paired_equivalences(const Model& model, const ThetaGrid& grid,
                                      double tolerance = kStrictTolerance) {
  return paired_formulations(model, grid, tolerance).agree();
}

// Overall verdicts of the three concepts. paired => conditional => split
// must hold for every model; `violation` flags a breach.
struct HierarchyRecord {
  bool paired = false;
  bool conditional = false;
  bool split = false;
  bool violation = false;
};

inline HierarchyRecord verify_hierarchy(const Model& model, const ThetaGrid& grid,
                                        double tolerance = kStrictTolerance) {
  HierarchyRecord h;
  h.paired = check_paired(model, grid, tolerance).overall;
  h.conditional = check_conditional(model, grid, tolerance).overall;
  h.split = check_split(model, grid, tolerance).overall;
  h.violation = (h.paired && !h.conditional) || (h.conditional && !h.split);
  return h;
}

// Bock's model is ordinal (paired concept) iff the slopes increase strictly.
inline bool bock_criterion(const BockModel& model) {
  for (std::size_t r = 1; r < model.slopes.size(); ++r)
    if (!(model.slopes[r - 1] < model.slopes[r])) return false;
  return true;
}

struct ReversalClosure {
  CumulativeModel reversed;
  double max_deviation = 0.0;
  double worst_theta = 0.0;
};

// The cumulative model for the reversed categories k - Y, trait -theta,
// thresholds -delta_{k+1-r}. Exact when the link is symmetric.
inline CumulativeModel reversed_model(const CumulativeModel& model) {
  std::vector<double> thresholds(model.thresholds.rbegin(), model.thresholds.rend());
  for (double& d : thresholds) d = -d;
  return make_cumulative(model.link, std::move(thresholds));
}

inline ReversalClosure check_reversal_closure(const CumulativeModel& model, const ThetaGrid& grid) {
  validate(model);
  ReversalClosure out;
  out.reversed = reversed_model(model);
  const Model original = model;
  const Model reversed = out.reversed;
  const std::size_t k = model.thresholds.size();
  for (double theta : grid.values()) {
    const auto p = category_probabilities(original, theta);
    const auto q = category_probabilities(reversed, -theta);
    for (std::size_t r = 0; r <= k; ++r) {
      const double dev = std::abs(p[k - r] - q[r]);
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        out.worst_theta = theta;
      }
    }
  }
  return out;
}

// Table-1 style summary: one row per model, one column per concept.
struct ConceptTable {
  std::vector<std::pair<std::string, HierarchyRecord>> rows;

  void add(std::string label, const HierarchyRecord& h) { rows.emplace_back(std::move(label), h); }

  void write(std::ostream& os) const {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "model,paired,conditional,split\n";
    for (const auto& [label, h] : rows)
      os << label << ',' << yn(h.paired) << ',' << yn(h.conditional) << ',' << yn(h.split) << '\n';
  }
};

inline void write_report(std::ostream& os, const OrdinalityReport& report) {
  os << "concept " << to_string(report.which) << ": " << (report.overall ? "ordinal" : "not ordinal")
     << '\n';
  for (const auto& c : report.comparisons) {
    os << "  ";
    if (c.s) os << "pair (" << *c.s << ',' << c.r << ")";
    else os << "r=" << c.r;
    os << "  " << to_string(c.verdict.trend) << "  min_diff=" << numeric::format12(c.verdict.min_difference)
       << " at theta=" << numeric::format12(c.verdict.worst_theta) << '\n';
  }
  if (report.analytic_increasing)
    os << "  analytic derivative: " << (*report.analytic_increasing ? "positive" : "not positive")
       << '\n';
}

}  // namespace ordlat
