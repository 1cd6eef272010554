// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned below and never relaxed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "../support.hpp"
#include "ordlat/ordlat.hpp"

using namespace ordlat;

namespace {

const Link kGumbelMax{LinkKind::gumbel_max};
const Link kGumbelMin{LinkKind::gumbel_min};

constexpr double kTimeLimitSeconds = 30.0;
constexpr double kIrTreeVariation = 1e-12;
constexpr double kReversalSymmetric = 1e-12;
constexpr double kReversalGumbel = 1e-3;
constexpr double kFirstStrengthSpread = 1e-10;
constexpr double kSecondStrengthCeiling = 0.01;
constexpr double kQuadratureCrossCheck = 1e-8;
constexpr double kFlatRange = 0.1;
constexpr double kCollapsedRange = 0.5;
constexpr double kFusedSum = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome hierarchy_property() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  const ThetaGrid grid;
  std::size_t models = 0, violations = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto family = fixtures::kClassical[i % 3];
    const Link link{kAllLinks[(i / 3) % 4]};
    const std::size_t k = 2 + (i / 12) % 5;
    violations += verify_hierarchy(fixtures::draw_classical(rng, family, link, k), grid).violation;
    ++models;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {violations == 0 && secs < kTimeLimitSeconds,
          std::to_string(models) + " models, " + std::to_string(violations) + " violations, " +
              numeric::format12(secs) + " s (limit 30 s)"};
}

Outcome logistic_versions() {
  std::mt19937_64 rng(2);
  const ThetaGrid grid;
  std::size_t passed = 0, total = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 2 + static_cast<std::size_t>(i) % 5;
    for (const Model& m : {Model{make_partial_credit(fixtures::draw_params(rng, k))},
                           Model{make_cumulative(kLogistic, fixtures::draw_thresholds(rng, k))},
                           Model{make_sequential(kLogistic, fixtures::draw_params(rng, k))}}) {
      const auto h = verify_hierarchy(m, grid);
      passed += h.split && h.paired && h.conditional;
      ++total;
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " pass split, paired and conditional"};
}

Outcome generic_link_pattern() {
  std::mt19937_64 rng(3);
  const ThetaGrid grid;
  std::size_t misses = 0, total = 0;
  for (Link l : {kGumbelMax, kGumbelMin})
    for (int i = 0; i < 50; ++i) {
      const std::size_t k = 2 + static_cast<std::size_t>(i) % 5;
      const auto cum = verify_hierarchy(fixtures::draw_classical(rng, fixtures::Classical::cumulative, l, k), grid);
      const auto seq = verify_hierarchy(fixtures::draw_classical(rng, fixtures::Classical::sequential, l, k), grid);
      const auto adj = verify_hierarchy(fixtures::draw_classical(rng, fixtures::Classical::adjacent, l, k), grid);
      misses += !cum.split;
      misses += !(seq.conditional && seq.split);
      misses += !(adj.paired && adj.conditional && adj.split);
      total += 3;
    }
  return {misses == 0, std::to_string(total - misses) + "/" + std::to_string(total) +
                           " gumbel-link models match cumulative:split, sequential:conditional+split, adjacent:all"};
}

Outcome concept_separation() {
  const ThetaGrid grid;
  SearchConfig cfg;
  const auto a = find_counterexample(Separation::split_not_conditional, cfg);
  const auto b = find_counterexample(Separation::conditional_not_paired, cfg);
  const bool a_ok = check_split(a.model, grid).overall && !check_conditional(a.model, grid).overall;
  const bool b_ok = check_conditional(b.model, grid).overall && !check_paired(b.model, grid).overall &&
                    check_split(b.model, grid).overall;
  return {a_ok && b_ok, "split-not-conditional after " + std::to_string(a.draws) +
                            " draws, conditional-not-paired after " + std::to_string(b.draws) +
                            " draws (seed 0, budget 100000)"};
}

Outcome irtree_pair() {
  const Model m = make_irtree(kLogistic, 0.3, -0.4, 0.8);
  double lo = INFINITY, hi = -INFINITY;
  for (double theta : numeric::linspace(-10.0, 10.0, 2001)) {
    const double v = pair_ratio(m, TraitPoint{theta, 0.5, -0.7}, 1, 0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {hi - lo < kIrTreeVariation, "pair (1,0) ratio varies by " + numeric::format12(hi - lo) + " (limit 1e-12)"};
}

Outcome bock_agreement() {
  std::mt19937_64 rng(6);
  const ThetaGrid grid;
  std::size_t agree = 0, ordered = 0;
  for (int i = 0; i < 200; ++i) {
    // Every fourth model gets sorted slopes so both verdicts are exercised.
    auto slopes = fixtures::draw_params(rng, 2 + static_cast<std::size_t>(i) % 4);
    if (i % 4 == 0) std::sort(slopes.begin(), slopes.end());
    const auto m = make_bock(slopes, fixtures::draw_params(rng, slopes.size()));
    const bool criterion = bock_criterion(m);
    ordered += criterion;
    agree += criterion == check_paired(m, grid).overall;
  }
  return {agree == 200, std::to_string(agree) + "/200 agree (" + std::to_string(ordered) + " with ordered slopes)"};
}

Outcome pcmrs() {
  const auto m = make_pcmrs({-1.5, -0.5, 0.5, 1.5});
  ThetaGrid dim1;
  dim1.fixed = {0.0, 0.0};
  ThetaGrid dim2 = dim1;
  dim2.active_dim = 1;
  const bool first = check_paired(m, dim1).overall;
  const auto rep = check_paired(m, dim2);
  const auto* up = rep.find(1, 0);
  const auto* down = rep.find(4, 3);
  const bool second = up && down && up->verdict.trend == Trend::increasing && down->verdict.trend == Trend::decreasing;
  return {first && second, std::string("dimension 1 paired: ") + (first ? "yes" : "no") +
                               "; dimension 2 pair (1,0) " + (up ? std::string(to_string(up->verdict.trend)) : "?") +
                               ", pair (4,3) " + (down ? std::string(to_string(down->verdict.trend)) : "?")};
}

Outcome reversal() {
  const ThetaGrid grid;
  bool ok = true;
  std::string detail;
  for (LinkKind kind : kAllLinks) {
    const double dev = check_reversal_closure(make_cumulative(Link{kind}, {-1.0, 1.0}), grid).max_deviation;
    const bool symmetric = kind == LinkKind::logistic || kind == LinkKind::normal;
    ok &= symmetric ? dev < kReversalSymmetric : dev > kReversalGumbel;
    detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(kind)) + " " + numeric::format12(dev);
  }
  return {ok, "max deviation " + detail};
}

Outcome figure_three() {
  const Population pop;
  const QuadratureConfig quad;
  const auto sweep = sweep_threshold(make_cumulative(kLogistic, {-1.0, 0.0}), 2, -1.0, 5.0, 61, pop, quad);
  double lo = INFINITY, hi = -INFINITY, worst_cross = 0.0, at5 = NAN;
  for (const auto& row : sweep.rows) {
    if (row.degenerate) continue;  // delta_2 = -1 lies outside the half-open sweep
    lo = std::min(lo, row.strengths[0]);
    hi = std::max(hi, row.strengths[0]);
    for (std::size_t r = 0; r < row.strengths.size(); ++r)
      worst_cross = std::max(worst_cross, std::abs(row.strengths[r] - row.cross_checks[r]));
    if (row.value == 5.0) at5 = row.strengths[1];
  }
  const double at05 = strength_measure(make_cumulative(kLogistic, {-1.0, 0.5}), DefiningFunction::split, 2, pop, quad).m;
  const bool flat = hi - lo < kFirstStrengthSpread;
  const bool small = at5 < kSecondStrengthCeiling;
  const bool decays = at5 < at05;
  const bool cross = worst_cross < kQuadratureCrossCheck;
  return {flat && small && decays && cross,
          "m_1 spread " + numeric::format12(hi - lo) + (flat ? " ok" : " FAIL") + "; m_2(5) = " +
              numeric::format12(at5) + (small ? " < 0.01 ok" : " >= 0.01 FAIL") + "; m_2(0.5) = " +
              numeric::format12(at05) + (decays ? " ok" : " FAIL") + "; quadrature gap " +
              numeric::format12(worst_cross) + (cross ? " ok" : " FAIL")};
}

Outcome figure_two() {
  const ThetaGrid grid;
  const Model near_tie = make_cumulative(kLogistic, {-2.0, -0.05, 0.05});
  const auto rows = flatness_diagnostic(near_tie, grid, kFlatRange);
  std::vector<std::size_t> flagged;
  for (const auto& row : rows)
    if (row.flagged) flagged.push_back(row.r);
  bool ok = !flagged.empty();
  double min_range = INFINITY, worst_sum = 0.0;
  for (std::size_t r : flagged) {
    const Model fused = collapse_categories(near_tie, r);
    for (const auto& row : flatness_diagnostic(fused, grid, kFlatRange)) min_range = std::min(min_range, row.range);
    for (double theta : grid.values()) {
      const auto p = category_probabilities(near_tie, theta);
      const auto q = category_probabilities(fused, theta);
      // Categories r-1 and r of the original become category r-1.
      for (std::size_t c = 0; c < q.size(); ++c) {
        const double expected = c < r - 1 ? p[c] : (c == r - 1 ? p[r - 1] + p[r] : p[c + 1]);
        worst_sum = std::max(worst_sum, std::abs(q[c] - expected));
      }
    }
  }
  ok &= min_range > kCollapsedRange && worst_sum < kFusedSum;
  std::string which;
  for (std::size_t r : flagged) which += (which.empty() ? "" : ",") + std::to_string(r);
  return {ok, "flagged r=" + which + "; smallest range after collapse " + numeric::format12(min_range) +
                  "; fused-sum error " + numeric::format12(worst_sum)};
}

Outcome step_ordering() {
  std::mt19937_64 rng(11);
  const ThetaGrid grid;
  std::size_t good = 0, total = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t items = 2 + static_cast<std::size_t>(trial) % 5;
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % 4;
    ItemSet set;
    for (std::size_t i = 0; i < items; ++i) set.items.push_back(make_sequential(kLogistic, fixtures::draw_params(rng, k)));
    for (std::size_t r = 1; r <= k; ++r) {
      const auto rec = invariant_step_ordering(set, r, grid);
      std::vector<std::size_t> expected(items);
      std::iota(expected.begin(), expected.end(), std::size_t{0});
      std::stable_sort(expected.begin(), expected.end(), [&](std::size_t a, std::size_t b) {
        return *rec.step_parameters[a] > *rec.step_parameters[b];
      });
      good += rec.invariant && rec.order == expected;
      ++total;
    }
  }
  ItemSet mixed;
  mixed.items = {Model{make_sequential(kLogistic, {0.0})}, Model{make_sequential(kGumbelMax, {-1.0})}};
  const bool crossing = !invariant_step_ordering(mixed, 1, grid).invariant;
  return {good == total && crossing, std::to_string(good) + "/" + std::to_string(total) +
                                         " logistic step orderings invariant in descending step parameter; mixed-link pair " +
                                         (crossing ? "not invariant" : "invariant")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"hierarchy property over 1000 random models", hierarchy_property},
      {"logistic versions ordinal under all concepts", logistic_versions},
      {"gumbel-link concept pattern", generic_link_pattern},
      {"concept separation counterexamples", concept_separation},
      {"IR-tree pair ratio ignores the primary trait", irtree_pair},
      {"Bock ordered slopes match paired check", bock_agreement},
      {"PCMRS per-dimension verdicts", pcmrs},
      {"reversal closure by link", reversal},
      {"strength sweep with one threshold moving", figure_three},
      {"flatness and collapsing near-tied thresholds", figure_two},
      {"invariant step ordering", step_ordering},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
