#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/links.hpp"
#include "ordlat/numeric.hpp"

namespace ordlat {

// Latent trait vector. Unidimensional families take one coordinate, the
// IR-tree takes (theta, theta2, theta3), multidimensional models take D.
class TraitPoint {
 public:
  TraitPoint() = default;
  TraitPoint(double theta) : coords_{theta} {}  // NOLINT: implicit for the common 1-D case
  TraitPoint(std::initializer_list<double> coords) : coords_(coords) {}
  explicit TraitPoint(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t dims() const { return coords_.size(); }
  double operator[](std::size_t d) const { return coords_[d]; }
  double& operator[](std::size_t d) { return coords_[d]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

// Samejima's graded response model: P(Y >= r) = F(theta - delta_r).
struct CumulativeModel {
  std::vector<double> thresholds;
  Link link;
  friend bool operator==(const CumulativeModel&, const CumulativeModel&) = default;
};

// Continuation-ratio model: P(Y >= r | Y >= r-1) = F(theta - delta_r).
struct SequentialModel {
  std::vector<double> steps;
  Link link;
  friend bool operator==(const SequentialModel&, const SequentialModel&) = default;
};

// P(Y = r | Y in {r-1, r}) = F(theta - delta_r). Logistic link gives the
// partial credit model.
struct AdjacentModel {
  std::vector<double> steps;
  Link link;
  friend bool operator==(const AdjacentModel&, const AdjacentModel&) = default;
};

// Bock's nominal model, pi_r proportional to exp(alpha_r (theta - beta_r)).
// Category 0 is the reference: slopes[0] == locations[0] == 0.
struct BockModel {
  std::vector<double> slopes;
  std::vector<double> locations;
  friend bool operator==(const BockModel&, const BockModel&) = default;
};

// Four-category IR-tree: a root node for agreement driven by theta and two
// extremity nodes driven by their own traits theta2 (disagree side) and
// theta3 (agree side).
struct IRTreeModel {
  double agree = 0.0;
  double disagree_extremity = 0.0;
  double agree_extremity = 0.0;
  Link link;
  friend bool operator==(const IRTreeModel&, const IRTreeModel&) = default;
};

// log(pi_r / pi_{r-1}) = sum_d weights[r-1][d] * theta_d - delta_r (logistic).
struct MultidimAdjacentModel {
  std::size_t dims = 1;
  std::vector<std::vector<double>> weights;  // k rows of `dims` weights
  std::vector<double> thresholds;
  friend bool operator==(const MultidimAdjacentModel&, const MultidimAdjacentModel&) = default;
};

// Category probabilities given directly as piecewise-linear curves in theta.
// probabilities[j] holds pi_0..pi_k at knots[j]; outside the knot range the
// end values are held.
struct TabulatedModel {
  std::vector<double> knots;
  std::vector<std::vector<double>> probabilities;
  friend bool operator==(const TabulatedModel&, const TabulatedModel&) = default;
};

using Model = std::variant<CumulativeModel, SequentialModel, AdjacentModel, BockModel,
                           IRTreeModel, MultidimAdjacentModel, TabulatedModel>;

struct ProbabilityVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t r) const { return values[r]; }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
};

// ---------------------------------------------------------------------------
// Construction and validation

namespace detail {

inline void require_finite(const std::vector<double>& xs, std::string_view what) {
  for (double x : xs)
    require(std::isfinite(x), ErrorKind::InvalidArgument,
            std::string(what) + " must be finite");
}

inline void require_steps(const std::vector<double>& xs, std::string_view what) {
  require(!xs.empty(), ErrorKind::ArityMismatch, std::string(what) + ": need k >= 1 parameters");
  require_finite(xs, what);
}

}  // namespace detail

inline void validate(const CumulativeModel& m) {
  detail::require_steps(m.thresholds, "cumulative thresholds");
  for (std::size_t r = 1; r < m.thresholds.size(); ++r) {
    if (!(m.thresholds[r - 1] < m.thresholds[r]))
      fail(ErrorKind::UnorderedThresholds,
           "threshold " + std::to_string(r) + " (" + numeric::format12(m.thresholds[r - 1]) +
               ") is not below threshold " + std::to_string(r + 1) + " (" +
               numeric::format12(m.thresholds[r]) + "); category " + std::to_string(r) +
               " would have zero probability");
  }
}

inline void validate(const SequentialModel& m) { detail::require_steps(m.steps, "sequential steps"); }
inline void validate(const AdjacentModel& m) { detail::require_steps(m.steps, "adjacent steps"); }

inline void validate(const BockModel& m) {
  require(m.slopes.size() >= 2, ErrorKind::ArityMismatch, "Bock model needs at least 2 categories");
  require(m.slopes.size() == m.locations.size(), ErrorKind::ArityMismatch,
          "Bock slopes and locations differ in length");
  detail::require_finite(m.slopes, "Bock slopes");
  detail::require_finite(m.locations, "Bock locations");
  require(m.slopes[0] == 0.0 && m.locations[0] == 0.0, ErrorKind::InvalidArgument,
          "Bock reference category 0 must have slope and location 0");
}

inline void validate(const IRTreeModel& m) {
  detail::require_finite({m.agree, m.disagree_extremity, m.agree_extremity}, "IR-tree parameters");
}

inline void validate(const MultidimAdjacentModel& m) {
  detail::require_steps(m.thresholds, "multidimensional thresholds");
  require(m.dims >= 1, ErrorKind::ArityMismatch, "multidimensional model needs D >= 1");
  require(m.weights.size() == m.thresholds.size(), ErrorKind::ArityMismatch,
          "need one weight row per threshold");
  for (const auto& row : m.weights) {
    require(row.size() == m.dims, ErrorKind::ArityMismatch, "weight row length must equal D");
    detail::require_finite(row, "scoring weights");
  }
}

inline void validate(const TabulatedModel& m) {
  require(m.knots.size() >= 2, ErrorKind::ArityMismatch, "table needs at least 2 knots");
  require(m.probabilities.size() == m.knots.size(), ErrorKind::ArityMismatch,
          "need one probability row per knot");
  detail::require_finite(m.knots, "table knots");
  for (std::size_t j = 1; j < m.knots.size(); ++j)
    require(m.knots[j - 1] < m.knots[j], ErrorKind::InvalidArgument,
            "table knots must be strictly increasing");
  const std::size_t cats = m.probabilities.front().size();
  require(cats >= 2, ErrorKind::ArityMismatch, "table needs at least 2 categories");
  for (const auto& row : m.probabilities) {
    require(row.size() == cats, ErrorKind::ArityMismatch, "ragged probability table");
    double sum = 0.0;
    for (double p : row) {
      require(std::isfinite(p) && p > 0.0, ErrorKind::InvalidArgument,
              "table probabilities must be positive");
      sum += p;
    }
    require(std::abs(sum - 1.0) < 1e-12, ErrorKind::InvalidArgument,
            "table probabilities must sum to 1 at every knot");
  }
}

inline void validate(const Model& model) {
  std::visit([](const auto& m) { validate(m); }, model);
}

inline CumulativeModel make_cumulative(Link link, std::vector<double> thresholds) {
  CumulativeModel m{std::move(thresholds), link};
  validate(m);
  return m;
}

inline SequentialModel make_sequential(Link link, std::vector<double> steps) {
  SequentialModel m{std::move(steps), link};
  validate(m);
  return m;
}

inline AdjacentModel make_adjacent(Link link, std::vector<double> steps) {
  AdjacentModel m{std::move(steps), link};
  validate(m);
  return m;
}

inline AdjacentModel make_partial_credit(std::vector<double> steps) {
  return make_adjacent(kLogistic, std::move(steps));
}

// Slopes and locations for categories 1..k; category 0 is pinned at zero.
inline BockModel make_bock(const std::vector<double>& slopes, const std::vector<double>& locations) {
  BockModel m;
  m.slopes.push_back(0.0);
  m.slopes.insert(m.slopes.end(), slopes.begin(), slopes.end());
  m.locations.push_back(0.0);
  m.locations.insert(m.locations.end(), locations.begin(), locations.end());
  validate(m);
  return m;
}

inline IRTreeModel make_irtree(Link link, double agree, double disagree_extremity,
                               double agree_extremity) {
  IRTreeModel m{agree, disagree_extremity, agree_extremity, link};
  validate(m);
  return m;
}

inline MultidimAdjacentModel make_multidim(std::vector<std::vector<double>> weights,
                                           std::vector<double> thresholds) {
  MultidimAdjacentModel m;
  m.dims = weights.empty() ? 0 : weights.front().size();
  m.weights = std::move(weights);
  m.thresholds = std::move(thresholds);
  validate(m);
  return m;
}

// Partial credit model with response style: trait weight 1 and style weight
// (m - r + 0.5) with middle category m = k/2. Requires an odd number of
// categories, i.e. even k.
inline MultidimAdjacentModel make_pcmrs(std::vector<double> thresholds) {
  const std::size_t k = thresholds.size();
  require(k >= 2 && k % 2 == 0, ErrorKind::ArityMismatch,
          "PCMRS needs an odd number of categories (even k >= 2)");
  const double middle = static_cast<double>(k) / 2.0;
  std::vector<std::vector<double>> weights;
  for (std::size_t r = 1; r <= k; ++r) weights.push_back({1.0, middle - static_cast<double>(r) + 0.5});
  return make_multidim(std::move(weights), std::move(thresholds));
}

inline TabulatedModel make_tabulated(std::vector<double> knots,
                                     std::vector<std::vector<double>> probabilities) {
  TabulatedModel m{std::move(knots), std::move(probabilities)};
  validate(m);
  return m;
}

// ---------------------------------------------------------------------------
// Shape queries

// Number of thresholds k; categories are 0..k.
inline std::size_t max_category(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CumulativeModel>) return m.thresholds.size();
        else if constexpr (std::is_same_v<T, SequentialModel> || std::is_same_v<T, AdjacentModel>)
          return m.steps.size();
        else if constexpr (std::is_same_v<T, BockModel>) return m.slopes.size() - 1;
        else if constexpr (std::is_same_v<T, IRTreeModel>) return 3;
        else if constexpr (std::is_same_v<T, MultidimAdjacentModel>) return m.thresholds.size();
        else return m.probabilities.front().size() - 1;
      },
      model);
}

inline std::size_t trait_dims(const Model& model) {
  if (const auto* md = std::get_if<MultidimAdjacentModel>(&model)) return md->dims;
  if (std::holds_alternative<IRTreeModel>(model)) return 3;
  return 1;
}

inline std::string_view family_name(const Model& model) {
  constexpr std::string_view names[] = {"cumulative", "sequential", "adjacent", "bock",
                                        "irtree",     "multidim",   "table"};
  return names[model.index()];
}

// The link of families that have one.
inline const Link* model_link(const Model& model) {
  return std::visit(
      [](const auto& m) -> const Link* {
        if constexpr (requires { m.link; }) return &m.link;
        else return nullptr;
      },
      model);
}

inline void check_trait(const Model& model, const TraitPoint& t) {
  const std::size_t want = trait_dims(model);
  if (t.dims() != want)
    fail(ErrorKind::DimensionMismatch, std::string(family_name(model)) + " model expects a " +
                                           std::to_string(want) + "-dimensional trait, got " +
                                           std::to_string(t.dims()));
}

// ---------------------------------------------------------------------------
// Evaluation

// Log-scale quantities of one model at one trait point. Tails are
// log P(Y >= r) for r = 0..k+1 and heads log P(Y < r); both are computed
// from the family's own structure where it has a closed form so that
// neither saturates near 0 or 1.
struct LogProfile {
  std::vector<double> log_probs;
  std::vector<double> log_tails;
  std::vector<double> log_heads;

  std::size_t k() const { return log_probs.size() - 1; }

  // logit of P(Y >= r)
  double split_logit(std::size_t r) const { return log_tails[r] - log_heads[r]; }
  // logit of P(Y >= r | Y >= r-1)
  double continuation_logit(std::size_t r) const { return log_tails[r] - log_probs[r - 1]; }
  double continuation_log(std::size_t r) const { return log_tails[r] - log_tails[r - 1]; }
};

namespace detail {

// Fill tails/heads by summing category probabilities in log space.
inline void tails_from_probs(LogProfile& p) {
  const std::size_t k = p.k();
  p.log_tails.assign(k + 2, numeric::kNegInf);
  p.log_heads.assign(k + 2, numeric::kNegInf);
  for (std::size_t r = k + 1; r-- > 0;)
    p.log_tails[r] = numeric::logaddexp(p.log_tails[r + 1], p.log_probs[r]);
  for (std::size_t r = 1; r <= k + 1; ++r)
    p.log_heads[r] = numeric::logaddexp(p.log_heads[r - 1], p.log_probs[r - 1]);
  p.log_tails[0] = 0.0;
  p.log_heads[k + 1] = 0.0;
  // The smaller of the two sums is accurate relative to its size; take the
  // larger one as its complement so values near 1 stay monotone.
  for (std::size_t r = 1; r <= k; ++r) {
    if (p.log_heads[r] < p.log_tails[r]) p.log_tails[r] = numeric::log1mexp(p.log_heads[r]);
    else p.log_heads[r] = numeric::log1mexp(p.log_tails[r]);
  }
}

// log pi from cumulative sums of adjacent log-odds.
inline std::vector<double> probs_from_adjacent_logits(const std::vector<double>& eta) {
  std::vector<double> s(eta.size() + 1, 0.0);
  for (std::size_t r = 1; r < s.size(); ++r) s[r] = s[r - 1] + eta[r - 1];
  const double norm = numeric::logsumexp(s);
  for (double& v : s) v -= norm;
  return s;
}

// log(F(a) - F(b)) for a > b, from whichever tail keeps the difference exact.
inline double log_cdf_difference(Link link, double a, double b) {
  const double lcb = log_cdf(link, b);
  if (lcb > -0.6931471805599453) {
    const double lsb = log_sf(link, b);
    return lsb + numeric::log1mexp(log_sf(link, a) - lsb);
  }
  const double lca = log_cdf(link, a);
  return lca + numeric::log1mexp(lcb - lca);
}

inline LogProfile profile(const CumulativeModel& m, const TraitPoint& t) {
  const std::size_t k = m.thresholds.size();
  const double theta = t[0];
  LogProfile p;
  p.log_probs.resize(k + 1);
  p.log_tails.assign(k + 2, numeric::kNegInf);
  p.log_heads.assign(k + 2, numeric::kNegInf);
  p.log_tails[0] = 0.0;
  p.log_heads[k + 1] = 0.0;
  for (std::size_t r = 1; r <= k; ++r) {
    p.log_tails[r] = log_cdf(m.link, theta - m.thresholds[r - 1]);
    p.log_heads[r] = log_sf(m.link, theta - m.thresholds[r - 1]);
  }
  p.log_probs[0] = p.log_heads[1];
  p.log_probs[k] = p.log_tails[k];
  for (std::size_t r = 1; r < k; ++r)
    p.log_probs[r] =
        log_cdf_difference(m.link, theta - m.thresholds[r - 1], theta - m.thresholds[r]);
  return p;
}

inline LogProfile profile(const SequentialModel& m, const TraitPoint& t) {
  const std::size_t k = m.steps.size();
  const double theta = t[0];
  LogProfile p;
  p.log_probs.resize(k + 1);
  p.log_tails.assign(k + 2, numeric::kNegInf);
  p.log_heads.assign(k + 2, numeric::kNegInf);
  p.log_tails[0] = 0.0;
  p.log_heads[k + 1] = 0.0;
  double reached = 0.0;  // log P(Y >= r)
  for (std::size_t r = 0; r <= k; ++r) {
    if (r > 0) {
      reached += log_cdf(m.link, theta - m.steps[r - 1]);
      p.log_tails[r] = reached;
    }
    p.log_probs[r] = r < k ? reached + log_sf(m.link, theta - m.steps[r]) : reached;
  }
  // Heads summed from the categories below: 1 - P(Y >= r) would be exactly
  // zero once the tail rounds to one.
  for (std::size_t r = 1; r <= k; ++r)
    p.log_heads[r] = numeric::logaddexp(p.log_heads[r - 1], p.log_probs[r - 1]);
  return p;
}

inline LogProfile profile(const AdjacentModel& m, const TraitPoint& t) {
  std::vector<double> eta(m.steps.size());
  for (std::size_t r = 0; r < eta.size(); ++r) eta[r] = logit(m.link, t[0] - m.steps[r]);
  LogProfile p;
  p.log_probs = probs_from_adjacent_logits(eta);
  tails_from_probs(p);
  return p;
}

inline LogProfile profile(const BockModel& m, const TraitPoint& t) {
  std::vector<double> z(m.slopes.size());
  for (std::size_t r = 0; r < z.size(); ++r) z[r] = m.slopes[r] * (t[0] - m.locations[r]);
  const double norm = numeric::logsumexp(z);
  for (double& v : z) v -= norm;
  LogProfile p;
  p.log_probs = std::move(z);
  tails_from_probs(p);
  return p;
}

inline LogProfile profile(const IRTreeModel& m, const TraitPoint& t) {
  const double agree = t[0] - m.agree;
  const double low = t[1] - m.disagree_extremity;
  const double high = t[2] - m.agree_extremity;
  const double log_agree = log_cdf(m.link, agree);
  const double log_disagree = log_sf(m.link, agree);
  LogProfile p;
  p.log_probs = {log_disagree + log_sf(m.link, low), log_disagree + log_cdf(m.link, low),
                 log_agree + log_sf(m.link, high), log_agree + log_cdf(m.link, high)};
  tails_from_probs(p);
  p.log_tails[2] = log_agree;
  p.log_heads[2] = log_disagree;
  return p;
}

inline double multidim_eta(const MultidimAdjacentModel& m, const TraitPoint& t, std::size_t r) {
  double eta = -m.thresholds[r - 1];
  for (std::size_t d = 0; d < m.dims; ++d) eta += m.weights[r - 1][d] * t[d];
  return eta;
}

inline LogProfile profile(const MultidimAdjacentModel& m, const TraitPoint& t) {
  std::vector<double> eta(m.thresholds.size());
  for (std::size_t r = 1; r <= eta.size(); ++r) eta[r - 1] = multidim_eta(m, t, r);
  LogProfile p;
  p.log_probs = probs_from_adjacent_logits(eta);
  tails_from_probs(p);
  return p;
}

inline std::vector<double> table_probabilities(const TabulatedModel& m, double theta) {
  const auto& knots = m.knots;
  if (theta <= knots.front()) return m.probabilities.front();
  if (theta >= knots.back()) return m.probabilities.back();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(knots.begin(), knots.end(), theta) - knots.begin());
  const std::size_t lo = hi - 1;
  const double w = (theta - knots[lo]) / (knots[hi] - knots[lo]);
  std::vector<double> out(m.probabilities[lo].size());
  for (std::size_t r = 0; r < out.size(); ++r)
    out[r] = (1.0 - w) * m.probabilities[lo][r] + w * m.probabilities[hi][r];
  return out;
}

inline LogProfile profile(const TabulatedModel& m, const TraitPoint& t) {
  LogProfile p;
  p.log_probs = table_probabilities(m, t[0]);
  for (double& v : p.log_probs) v = std::log(v);
  tails_from_probs(p);
  return p;
}

}  // namespace detail

inline LogProfile log_profile(const Model& model, const TraitPoint& t) {
  check_trait(model, t);
  return std::visit([&](const auto& m) { return detail::profile(m, t); }, model);
}

inline std::vector<double> log_category_probabilities(const Model& model, const TraitPoint& t) {
  return log_profile(model, t).log_probs;
}

inline ProbabilityVector category_probabilities(const Model& model, const TraitPoint& t) {
  if (const auto* tab = std::get_if<TabulatedModel>(&model)) {
    check_trait(model, t);
    return {detail::table_probabilities(*tab, t[0])};
  }
  ProbabilityVector out{log_category_probabilities(model, t)};
  for (double& v : out.values) v = std::max(std::exp(v), detail::kCdfFloor);
  return out;
}

namespace detail {

inline void check_category(const Model& model, std::size_t r) {
  const std::size_t k = max_category(model);
  if (r < 1 || r > k)
    fail(ErrorKind::IndexOutOfRange,
         "category index " + std::to_string(r) + " outside 1.." + std::to_string(k));
}

}  // namespace detail

// P(Y >= r | t) for 1 <= r <= k.
inline double cumulative_probability(const Model& model, const TraitPoint& t, std::size_t r) {
  detail::check_category(model, r);
  if (const auto* cm = std::get_if<CumulativeModel>(&model)) {
    check_trait(model, t);
    return cdf(cm->link, t[0] - cm->thresholds[r - 1]);
  }
  return std::exp(log_profile(model, t).log_tails[r]);
}

// P(Y >= r | Y >= r-1, t) for 1 <= r <= k.
inline double continuation_probability(const Model& model, const TraitPoint& t, std::size_t r) {
  detail::check_category(model, r);
  if (const auto* sm = std::get_if<SequentialModel>(&model)) {
    check_trait(model, t);
    return cdf(sm->link, t[0] - sm->steps[r - 1]);
  }
  return std::exp(log_profile(model, t).continuation_log(r));
}

// P(Y = r | Y in {r-1, r}, t) for 1 <= r <= k.
inline double adjacent_probability(const Model& model, const TraitPoint& t, std::size_t r) {
  detail::check_category(model, r);
  const LogProfile p = log_profile(model, t);
  const double a = p.log_probs[r];
  return std::exp(a - numeric::logaddexp(a, p.log_probs[r - 1]));
}

namespace detail {

inline void check_pair(const Model& model, std::size_t r, std::size_t s) {
  const std::size_t k = max_category(model);
  if (!(s < r && r <= k))
    fail(ErrorKind::IndexOutOfRange, "pair (r=" + std::to_string(r) + ", s=" +
                                         std::to_string(s) + ") needs 0 <= s < r <= " +
                                         std::to_string(k));
}

}  // namespace detail

// log(pi_r / pi_s), s < r. Closed forms for the adjacent-type families, the
// Bock model and the IR-tree; everything else differences log probabilities.
inline double log_pair_ratio(const Model& model, const TraitPoint& t, std::size_t r, std::size_t s) {
  detail::check_pair(model, r, s);
  check_trait(model, t);
  if (const auto* am = std::get_if<AdjacentModel>(&model)) {
    double sum = 0.0;
    for (std::size_t j = s + 1; j <= r; ++j) sum += logit(am->link, t[0] - am->steps[j - 1]);
    return sum;
  }
  if (const auto* md = std::get_if<MultidimAdjacentModel>(&model)) {
    double sum = 0.0;
    for (std::size_t j = s + 1; j <= r; ++j) sum += detail::multidim_eta(*md, t, j);
    return sum;
  }
  if (const auto* bm = std::get_if<BockModel>(&model)) {
    const double slope = bm->slopes[r] - bm->slopes[s];
    const double intercept = bm->slopes[r] * bm->locations[r] - bm->slopes[s] * bm->locations[s];
    return slope * t[0] - intercept;
  }
  if (const auto* tree = std::get_if<IRTreeModel>(&model)) {
    const Link f = tree->link;
    const double side[4] = {log_sf(f, t[0] - tree->agree), log_sf(f, t[0] - tree->agree),
                            log_cdf(f, t[0] - tree->agree), log_cdf(f, t[0] - tree->agree)};
    const double leaf[4] = {log_sf(f, t[1] - tree->disagree_extremity),
                            log_cdf(f, t[1] - tree->disagree_extremity),
                            log_sf(f, t[2] - tree->agree_extremity),
                            log_cdf(f, t[2] - tree->agree_extremity)};
    // Same branch: the root factor cancels exactly.
    if ((r < 2) == (s < 2)) return leaf[r] - leaf[s];
    return (side[r] + leaf[r]) - (side[s] + leaf[s]);
  }
  const LogProfile p = log_profile(model, t);
  return p.log_probs[r] - p.log_probs[s];
}

inline double pair_ratio(const Model& model, const TraitPoint& t, std::size_t r, std::size_t s) {
  return std::exp(log_pair_ratio(model, t, r, s));
}

}  // namespace ordlat
