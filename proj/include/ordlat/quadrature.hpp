#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "ordlat/error.hpp"

namespace ordlat {

struct Population {
  double mean = 0.0;
  double sd = 1.0;

  void validate() const {
    require(std::isfinite(mean) && std::isfinite(sd) && sd > 0.0, ErrorKind::InvalidArgument,
            "population needs a finite mean and a positive standard deviation");
  }

  double density(double theta) const {
    const double z = (theta - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
  }
};

enum class QuadratureMethod { gauss_hermite, trapezoid };

inline std::string_view to_string(QuadratureMethod m) {
  return m == QuadratureMethod::gauss_hermite ? "gauss-hermite" : "trapezoid";
}

inline QuadratureMethod parse_quadrature(std::string_view token) {
  if (token == "gauss-hermite" || token == "gh") return QuadratureMethod::gauss_hermite;
  if (token == "trapezoid") return QuadratureMethod::trapezoid;
  fail(ErrorKind::InvalidArgument, "unknown quadrature method '" + std::string(token) + "'");
}

struct QuadratureConfig {
  QuadratureMethod method = QuadratureMethod::gauss_hermite;
  std::size_t nodes = 101;               // Gauss-Hermite nodes
  std::size_t trapezoid_points = 100001;
  double range_sd = 8.0;                 // trapezoid half-width in standard deviations

  void validate() const {
    require(nodes >= 11 && trapezoid_points >= 11, ErrorKind::InvalidArgument,
            "quadrature needs at least 11 nodes");
    require(range_sd > 0.0, ErrorKind::InvalidArgument, "trapezoid range must be positive");
  }

  QuadratureConfig other_method() const {
    QuadratureConfig c = *this;
    c.method = method == QuadratureMethod::gauss_hermite ? QuadratureMethod::trapezoid
                                                         : QuadratureMethod::gauss_hermite;
    return c;
  }
};

// Nodes and weights for the weight function exp(-x^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on the orthonormal Hermite recurrence, roots found from
// the largest down using the usual asymptotic starting values; the rule is
// symmetric so only half the roots are computed.
inline GaussHermiteRule gauss_hermite_rule(std::size_t n) {
  require(n >= 1, ErrorKind::InvalidArgument, "Gauss-Hermite rule needs n >= 1");
  constexpr double kPiQuarterRoot = 0.7511255444649425;  // pi^(-1/4)
  const auto nd = static_cast<double>(n);
  GaussHermiteRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  double z = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    if (i == 0) z = std::sqrt(2.0 * nd + 1.0) - 1.85575 * std::pow(2.0 * nd + 1.0, -1.0 / 6.0);
    else if (i == 1) z -= 1.14 * std::pow(nd, 0.426) / z;
    else if (i == 2) z = 1.86 * z - 0.86 * rule.nodes[0];
    else if (i == 3) z = 1.91 * z - 0.91 * rule.nodes[1];
    else z = 2.0 * z - rule.nodes[i - 2];

    double derivative = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p1 = kPiQuarterRoot;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const auto jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / jd) * p2 - std::sqrt((jd - 1.0) / jd) * p3;
      }
      derivative = std::sqrt(2.0 * nd) * p2;
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    require(converged, ErrorKind::QuadratureUnstable,
            "Gauss-Hermite root " + std::to_string(i) + " did not converge");
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (derivative * derivative);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// E[h(theta)] for theta ~ N(mean, sd^2).
template <class Fn>
double expect_gauss_hermite(const Fn& h, const Population& pop, const GaussHermiteRule& rule) {
  const double scale = std::numbers::sqrt2 * pop.sd;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * h(pop.mean + scale * rule.nodes[i]);
  return sum / std::sqrt(std::numbers::pi);
}

template <class Fn>
double expect_trapezoid(const Fn& h, const Population& pop, std::size_t points, double range_sd) {
  const double lo = pop.mean - range_sd * pop.sd;
  const double step = 2.0 * range_sd * pop.sd / static_cast<double>(points - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double theta = lo + step * static_cast<double>(i);
    const double w = (i == 0 || i + 1 == points) ? 0.5 : 1.0;
    sum += w * h(theta) * pop.density(theta);
  }
  return sum * step;
}

template <class Fn>
double expect(const Fn& h, const Population& pop, const QuadratureConfig& quad) {
  pop.validate();
  quad.validate();
  if (quad.method == QuadratureMethod::gauss_hermite)
    return expect_gauss_hermite(h, pop, gauss_hermite_rule(quad.nodes));
  return expect_trapezoid(h, pop, quad.trapezoid_points, quad.range_sd);
}

}  // namespace ordlat
