#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/grid.hpp"
#include "ordlat/links.hpp"
#include "ordlat/models.hpp"
#include "ordlat/quadrature.hpp"

namespace ordlat {

// The defining functions g_r that compare categories:
//   split:       P(Y >= r)
//   adjacent:    P(Y = r | Y in {r-1, r})
//   conditional: P(Y >= r | Y >= r-1)
enum class DefiningFunction { split, adjacent, conditional };

inline std::string_view to_string(DefiningFunction g) {
  switch (g) {
    case DefiningFunction::split: return "split";
    case DefiningFunction::adjacent: return "adjacent";
    case DefiningFunction::conditional: return "conditional";
  }
  return "?";
}

inline DefiningFunction parse_defining_function(std::string_view token) {
  if (token == "split") return DefiningFunction::split;
  if (token == "adjacent" || token == "adj") return DefiningFunction::adjacent;
  if (token == "conditional" || token == "cond") return DefiningFunction::conditional;
  fail(ErrorKind::InvalidArgument, "unknown defining function '" + std::string(token) + "'");
}

struct FunctionTrace {
  DefiningFunction function = DefiningFunction::split;
  std::size_t r = 1;
  std::vector<double> theta;
  std::vector<double> value;
};

inline double g_value(const Model& model, DefiningFunction g, std::size_t r, const TraitPoint& t) {
  switch (g) {
    case DefiningFunction::split: return cumulative_probability(model, t, r);
    case DefiningFunction::adjacent: return adjacent_probability(model, t, r);
    case DefiningFunction::conditional: return continuation_probability(model, t, r);
  }
  return 0.0;
}

inline FunctionTrace trace_g(const Model& model, DefiningFunction g, std::size_t r,
                             const ThetaGrid& grid) {
  FunctionTrace out{g, r, {}, {}};
  for (const auto& t : grid.traits_for(model)) {
    out.theta.push_back(t[grid.active_dim]);
    out.value.push_back(g_value(model, g, r, t));
  }
  return out;
}

inline constexpr double kDerivativeStep = 1e-5;
inline constexpr double kRichardsonTrigger = 1e-6;

namespace detail {

// d g / d theta_active when the family gives it in closed form.
inline std::optional<double> analytic_g_derivative(const Model& model, DefiningFunction g,
                                                   std::size_t r, const TraitPoint& t,
                                                   std::size_t active) {
  if (g == DefiningFunction::split) {
    if (const auto* cm = std::get_if<CumulativeModel>(&model))
      return pdf(cm->link, t[0] - cm->thresholds[r - 1]);
  }
  if (g == DefiningFunction::conditional) {
    if (const auto* sm = std::get_if<SequentialModel>(&model))
      return pdf(sm->link, t[0] - sm->steps[r - 1]);
  }
  if (g == DefiningFunction::adjacent) {
    if (const auto* am = std::get_if<AdjacentModel>(&model))
      return pdf(am->link, t[0] - am->steps[r - 1]);
    if (const auto* md = std::get_if<MultidimAdjacentModel>(&model)) {
      const double p = adjacent_probability(model, t, r);
      return md->weights[r - 1][active] * p * (1.0 - p);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Central difference at step h, compared with step 2h; when the two differ
// by more than 1e-6 the Richardson combination of both is returned.
inline double g_derivative(const Model& model, DefiningFunction g, std::size_t r,
                           const TraitPoint& t, std::size_t active = 0) {
  if (auto exact = detail::analytic_g_derivative(model, g, r, t, active)) return *exact;
  auto at = [&](double offset) {
    TraitPoint shifted = t;
    shifted[active] += offset;
    return g_value(model, g, r, shifted);
  };
  const double h = kDerivativeStep;
  const double fine = (at(h) - at(-h)) / (2.0 * h);
  const double coarse = (at(2.0 * h) - at(-2.0 * h)) / (4.0 * h);
  if (std::abs(fine - coarse) > kRichardsonTrigger) return (4.0 * fine - coarse) / 3.0;
  return fine;
}

struct StrengthValue {
  double m = 0.0;
  std::size_t r = 1;
  DefiningFunction function = DefiningFunction::split;
  QuadratureMethod method = QuadratureMethod::gauss_hermite;
  double cross_check = 0.0;  // same integral by the other quadrature method
};

inline constexpr double kQuadratureAgreement = 1e-6;

// m = integral of g_r'(theta) f(theta) over the population density f. The
// integral is evaluated by the configured method and repeated with the other
// one; a disagreement beyond 1e-6 raises QuadratureUnstable. For
// multidimensional models `embedding` selects the varying coordinate and
// fixes the rest.
inline StrengthValue strength_measure(const Model& model, DefiningFunction g, std::size_t r,
                                      const Population& pop, const QuadratureConfig& quad,
                                      const ThetaGrid& embedding = {}) {
  const std::size_t k = max_category(model);
  require(r >= 1 && r <= k, ErrorKind::IndexOutOfRange,
          "comparison index " + std::to_string(r) + " outside 1.." + std::to_string(k));
  const std::size_t dims = trait_dims(model);
  require(embedding.active_dim < dims, ErrorKind::DimensionMismatch,
          "active dimension outside the model's trait");
  auto integrand = [&](double theta) {
    return g_derivative(model, g, r, embedding.trait(theta, dims), embedding.active_dim);
  };
  StrengthValue out;
  out.r = r;
  out.function = g;
  out.method = quad.method;
  out.m = expect(integrand, pop, quad);
  out.cross_check = expect(integrand, pop, quad.other_method());
  if (!(std::abs(out.m - out.cross_check) <= kQuadratureAgreement))
    fail(ErrorKind::QuadratureUnstable,
         "strength of comparison " + std::to_string(r) + ": " + std::string(to_string(quad.method)) +
             " gives " + numeric::format12(out.m) + " but the cross-check gives " +
             numeric::format12(out.cross_check));
  return out;
}

struct SweepRow {
  double value = 0.0;
  bool degenerate = false;
  std::vector<double> strengths;        // m_1..m_k, NaN when degenerate
  std::vector<double> cross_checks;
};

struct SweepTable {
  std::size_t index = 1;
  DefiningFunction function = DefiningFunction::split;
  std::vector<SweepRow> rows;
};

// Moves threshold `index` (1-based) of `base` across [low, high] in `steps`
// evenly spaced values and records m_1..m_k at each. Values that break the
// strict threshold order are kept as degenerate rows.
inline SweepTable sweep_threshold(const CumulativeModel& base, std::size_t index, double low,
                                  double high, std::size_t steps, const Population& pop,
                                  const QuadratureConfig& quad,
                                  DefiningFunction g = DefiningFunction::split) {
  validate(base);
  const std::size_t k = base.thresholds.size();
  require(index >= 1 && index <= k, ErrorKind::IndexOutOfRange, "threshold index out of range");
  require(steps >= 1, ErrorKind::InvalidArgument, "sweep needs at least one step");
  SweepTable table{index, g, {}};
  bool any_valid = false;
  for (double value : numeric::linspace(low, high, steps)) {
    SweepRow row;
    row.value = value;
    CumulativeModel m = base;
    m.thresholds[index - 1] = value;
    row.degenerate = false;
    for (std::size_t j = 1; j < k; ++j)
      if (!(m.thresholds[j - 1] < m.thresholds[j])) row.degenerate = true;
    if (row.degenerate) {
      row.strengths.assign(k, std::numeric_limits<double>::quiet_NaN());
      row.cross_checks = row.strengths;
    } else {
      any_valid = true;
      const Model model = m;
      for (std::size_t r = 1; r <= k; ++r) {
        const StrengthValue s = strength_measure(model, g, r, pop, quad);
        row.strengths.push_back(s.m);
        row.cross_checks.push_back(s.cross_check);
      }
    }
    table.rows.push_back(std::move(row));
  }
  require(any_valid, ErrorKind::InvalidArgument,
          "empty sweep: every value breaks the threshold order");
  return table;
}

// Fuses categories r-1 and r of a cumulative model by dropping threshold r.
// Only cumulative models stay in their family under collapsing.
inline CumulativeModel collapse_categories(const Model& model, std::size_t r) {
  const auto* cm = std::get_if<CumulativeModel>(&model);
  if (!cm)
    fail(ErrorKind::UnsupportedModel, "collapsing adjacent categories keeps the model structure "
                                      "only for cumulative models, not for " +
                                          std::string(family_name(model)));
  const std::size_t k = cm->thresholds.size();
  require(k >= 2, ErrorKind::InvalidArgument, "a model with two categories cannot be collapsed");
  require(r >= 1 && r <= k, ErrorKind::IndexOutOfRange,
          "threshold index " + std::to_string(r) + " outside 1.." + std::to_string(k));
  std::vector<double> thresholds = cm->thresholds;
  thresholds.erase(thresholds.begin() + static_cast<std::ptrdiff_t>(r - 1));
  return make_cumulative(cm->link, std::move(thresholds));
}

struct FlatnessRow {
  std::size_t r = 1;
  double min = 0.0;
  double max = 0.0;
  double range = 0.0;
  bool flagged = false;
};

inline constexpr double kDefaultFlatness = 0.1;

// Range of each adjacent comparison g_r^adj over the grid; comparisons that
// barely move are candidates for collapsing.
inline std::vector<FlatnessRow> flatness_diagnostic(const Model& model, const ThetaGrid& grid,
                                                    double threshold = kDefaultFlatness) {
  std::vector<FlatnessRow> out;
  const std::size_t k = max_category(model);
  for (std::size_t r = 1; r <= k; ++r) {
    const FunctionTrace tr = trace_g(model, DefiningFunction::adjacent, r, grid);
    const auto [lo, hi] = std::minmax_element(tr.value.begin(), tr.value.end());
    FlatnessRow row{r, *lo, *hi, *hi - *lo, false};
    row.flagged = row.range < threshold;
    out.push_back(row);
  }
  return out;
}

}  // namespace ordlat
