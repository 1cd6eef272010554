#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ordlat/ordinality.hpp"
#include "ordlat/strength.hpp"

using namespace ordlat;

namespace {

// Independent oracle: 10^6-point trapezoid of pdf_logistic(theta - delta)
// times the standard normal density over [-12, 12], written out directly.
double logistic_split_strength_oracle(double delta) {
  const std::size_t n = 1000000;
  const double lo = -12.0, hi = 12.0, h = (hi - lo) / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = lo + h * static_cast<double>(i);
    const double e = std::exp(-std::abs(x - delta));
    const double f = e / ((1.0 + e) * (1.0 + e));
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    sum += (i == 0 || i == n ? 0.5 : 1.0) * f * phi;
  }
  return sum * h;
}

const Population kStandard{};
const QuadratureConfig kGH{};

}  // namespace

TEST(TraceG, Examples) {
  const Model cum = make_cumulative(kLogistic, {-1.0, 1.0});
  const ThetaGrid grid{-1.0, 1.0, 3, 0, {}};
  const auto split = trace_g(cum, DefiningFunction::split, 2, grid);
  EXPECT_EQ(split.theta, (std::vector<double>{-1.0, 0.0, 1.0}));
  EXPECT_DOUBLE_EQ(split.value[2], 0.5);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(split.value[i], cdf(kLogistic, split.theta[i] - 1.0));
  const auto adj = trace_g(cum, DefiningFunction::adjacent, 1, grid);
  EXPECT_NEAR(adj.value[1], 0.46212 / (0.26894 + 0.46212), 1e-4);
  EXPECT_NEAR(adj.value[1], 1.0 - std::exp(-1.0), 1e-12);
  const Model seq = make_sequential(kLogistic, {0.0, 0.3});
  EXPECT_DOUBLE_EQ(trace_g(seq, DefiningFunction::conditional, 1, grid).value[1], 0.5);
  EXPECT_THROW(trace_g(seq, DefiningFunction::conditional, 3, grid), Error);
}

TEST(GDerivative, AnalyticMatchesCentralDifference) {
  const double h = 1e-5;
  for (LinkKind k : kAllLinks) {
    const Model m = make_cumulative(Link{k}, {-1.0, 0.5});
    for (double theta : numeric::linspace(-10.0, 10.0, 2001))
      for (std::size_t r = 1; r <= 2; ++r) {
        const double fd = (g_value(m, DefiningFunction::split, r, theta + h) -
                           g_value(m, DefiningFunction::split, r, theta - h)) / (2.0 * h);
        EXPECT_LT(std::abs(g_derivative(m, DefiningFunction::split, r, theta) - fd), 1e-6);
      }
  }
}

TEST(GDerivative, NumericFallbackAccurate) {
  // Adjacent function of a cumulative model has no closed form here; compare
  // with a Richardson-free five-point stencil at a larger step.
  const Model m = make_cumulative(kLogistic, {-1.0, 1.0});
  for (double theta : {-3.0, -0.5, 0.0, 1.7, 4.0}) {
    const double h = 1e-3;
    auto g = [&](double t) { return g_value(m, DefiningFunction::adjacent, 2, t); };
    const double five = (-g(theta + 2 * h) + 8 * g(theta + h) - 8 * g(theta - h) + g(theta - 2 * h)) / (12 * h);
    EXPECT_NEAR(g_derivative(m, DefiningFunction::adjacent, 2, theta), five, 1e-8);
  }
}

TEST(StrengthMeasure, FlatFunctionHasZeroStrength) {
  const std::vector<double> row{0.25, 0.25, 0.5};
  const Model flat = make_tabulated({-10.0, 10.0}, {row, row});
  for (auto g : {DefiningFunction::split, DefiningFunction::adjacent, DefiningFunction::conditional})
    for (std::size_t r = 1; r <= 2; ++r) EXPECT_EQ(strength_measure(flat, g, r, kStandard, kGH).m, 0.0);
}

TEST(StrengthMeasure, MatchesTrapezoidOracle) {
  for (double delta : {0.0, 0.5, 5.0}) {
    const Model m = make_cumulative(kLogistic, {delta});
    const auto s = strength_measure(m, DefiningFunction::split, 1, kStandard, kGH);
    EXPECT_NEAR(s.m, logistic_split_strength_oracle(delta), 1e-8) << delta;
    EXPECT_NEAR(s.m, s.cross_check, 1e-8);
  }
}

TEST(StrengthMeasure, FrozenValues) {
  // Values of the trapezoid oracle above, frozen at 12 digits.
  const Model m = make_cumulative(kLogistic, {-1.0, 5.0});
  EXPECT_NEAR(strength_measure(m, DefiningFunction::split, 2, kStandard, kGH).m, 0.0105046504093, 1e-12);
  EXPECT_NEAR(strength_measure(make_cumulative(kLogistic, {0.0}), DefiningFunction::split, 1, kStandard, kGH).m,
              0.206620964142, 1e-12);
}

TEST(StrengthMeasure, NonNegativeAndPositiveWhenIncreasing) {
  const ThetaGrid grid;
  std::vector<Model> models{make_cumulative(kLogistic, {-1.0, 0.5, 2.0}), make_sequential(Link{LinkKind::normal}, {1.0, -1.0}),
                            make_partial_credit({0.3, -0.2, 1.0}), make_bock({0.5, 1.5}, {0.0, 1.0})};
  for (const auto& m : models)
    for (auto g : {DefiningFunction::split, DefiningFunction::adjacent, DefiningFunction::conditional})
      for (std::size_t r = 1; r <= max_category(m); ++r) {
        const double value = strength_measure(m, g, r, kStandard, kGH).m;
        EXPECT_GE(value, 0.0);
        const auto tr = trace_g(m, g, r, grid);
        if (classify(tr.theta, tr.value, 0.0).trend == Trend::increasing) {
          EXPECT_GT(value, 0.0);
        }
      }
}

TEST(StrengthMeasure, Errors) {
  const Model m = make_cumulative(kLogistic, {0.0});
  EXPECT_THROW(strength_measure(m, DefiningFunction::split, 2, kStandard, kGH), Error);
  try {
    // Eleven Gauss-Hermite nodes cannot resolve the kink of a table model the
    // trapezoid sees exactly.
    QuadratureConfig coarse;
    coarse.nodes = 11;
    const Model table = make_tabulated({-0.3, 0.3}, {{0.9, 0.1}, {0.1, 0.9}});
    strength_measure(table, DefiningFunction::split, 1, kStandard, coarse);
    FAIL() << "expected QuadratureUnstable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QuadratureUnstable);
  }
}

TEST(Sweep, SecondThresholdMoving) {
  const auto table = sweep_threshold(make_cumulative(kLogistic, {-1.0, 0.0}), 2, -1.0, 5.0, 61, kStandard, kGH);
  ASSERT_EQ(table.rows.size(), 61u);
  EXPECT_TRUE(table.rows.front().degenerate);
  EXPECT_TRUE(std::isnan(table.rows.front().strengths[0]));
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& row : table.rows) {
    if (row.degenerate) continue;
    lo = std::min(lo, row.strengths[0]);
    hi = std::max(hi, row.strengths[0]);
    for (std::size_t r = 0; r < 2; ++r) EXPECT_NEAR(row.strengths[r], row.cross_checks[r], 1e-8);
  }
  EXPECT_LT(hi - lo, 1e-10);
  const double at5 = table.rows.back().strengths[1];
  EXPECT_EQ(table.rows.back().value, 5.0);
  const double at05 = strength_measure(make_cumulative(kLogistic, {-1.0, 0.5}), DefiningFunction::split, 2, kStandard, kGH).m;
  EXPECT_LT(at5, at05);
}

TEST(Sweep, EmptyWhenEveryStepDegenerate) {
  EXPECT_THROW(sweep_threshold(make_cumulative(kLogistic, {-1.0, 0.0}), 2, -3.0, -1.0, 5, kStandard, kGH), Error);
}

TEST(Collapse, ProbabilitySumIdentity) {
  const Model orig = make_cumulative(kLogistic, {-1.0, 0.0, 0.2});
  const Model top = collapse_categories(orig, 3);
  EXPECT_EQ(std::get<CumulativeModel>(top).thresholds, (std::vector<double>{-1.0, 0.0}));
  const Model bottom = collapse_categories(orig, 1);
  for (double theta : numeric::linspace(-10.0, 10.0, 2001)) {
    const auto p = category_probabilities(orig, theta);
    const auto q = category_probabilities(top, theta);
    EXPECT_NEAR(q[2], p[2] + p[3], 1e-12);
    EXPECT_NEAR(q[0], p[0], 1e-12);
    const auto b = category_probabilities(bottom, theta);
    EXPECT_NEAR(b[0], p[0] + p[1], 1e-12);
    EXPECT_NEAR(b[2], p[3], 1e-12);
  }
  EXPECT_TRUE(check_split(top, ThetaGrid{}).overall);
  EXPECT_TRUE(check_split(bottom, ThetaGrid{}).overall);
}

TEST(Collapse, Rejections) {
  try {
    collapse_categories(make_partial_credit({0.0, 1.0}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedModel);
  }
  EXPECT_THROW(collapse_categories(make_cumulative(kLogistic, {0.0}), 1), Error);
  EXPECT_THROW(collapse_categories(make_cumulative(kLogistic, {0.0, 1.0}), 3), Error);
}

TEST(Flatness, NearTiedThresholdsAndCollapse) {
  const ThetaGrid grid;
  for (const auto& row : flatness_diagnostic(make_cumulative(kLogistic, {-2.0, 0.0, 2.0}), grid))
    EXPECT_FALSE(row.flagged) << row.r;
  const Model near_tie = make_cumulative(kLogistic, {-2.0, -0.05, 0.05});
  const auto rows = flatness_diagnostic(near_tie, grid);
  EXPECT_FALSE(rows[0].flagged);
  EXPECT_TRUE(rows[1].flagged);
  EXPECT_TRUE(rows[2].flagged);
  for (std::size_t r : {2u, 3u})
    for (const auto& row : flatness_diagnostic(collapse_categories(near_tie, r), grid)) {
      EXPECT_FALSE(row.flagged);
      EXPECT_GT(row.range, 0.5);
    }
  EXPECT_EQ(flatness_diagnostic(make_cumulative(kLogistic, {0.0}), grid).size(), 1u);
}
