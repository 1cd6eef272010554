#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "ordlat/error.hpp"
#include "ordlat/numeric.hpp"

namespace ordlat {

enum class LinkKind { logistic, normal, gumbel_max, gumbel_min };

inline constexpr std::array<LinkKind, 4> kAllLinks{LinkKind::logistic, LinkKind::normal,
                                                   LinkKind::gumbel_max, LinkKind::gumbel_min};

// A strictly increasing response function F with its density. Besides the
// plain cdf/pdf every link exposes log F and log(1 - F), computed so that
// neither tail saturates; all monotonicity checks downstream work on those.
struct Link {
  LinkKind kind = LinkKind::logistic;

  constexpr bool symmetric() const {
    return kind == LinkKind::logistic || kind == LinkKind::normal;
  }

  friend constexpr bool operator==(Link, Link) = default;
};

inline constexpr Link kLogistic{LinkKind::logistic};

inline std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::logistic: return "logistic";
    case LinkKind::normal: return "normal";
    case LinkKind::gumbel_max: return "gumbel-max";
    case LinkKind::gumbel_min: return "gumbel-min";
  }
  return "?";
}

inline Link parse_link(std::string_view token) {
  for (LinkKind k : kAllLinks)
    if (token == to_string(k)) return Link{k};
  fail(ErrorKind::UnknownLink, "unknown link '" + std::string(token) +
                                   "' (expected logistic, normal, gumbel-max or gumbel-min)");
}

namespace detail {

inline constexpr double kCdfFloor = 1e-300;
inline constexpr double kCdfCeil = 1.0 - 0x1p-53;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

inline void check_finite(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "link argument must be finite");
}

// log Phi(x) for the standard normal.
inline double normal_log_cdf(double x) {
  if (x < -35.0) {
    // Mills-ratio series; the omitted term is below 1e-12 relative here.
    const double z = 1.0 / (x * x);
    const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
    return -0.5 * x * x - kLogSqrt2Pi - std::log(-x) + std::log(series);
  }
  if (x < 0.0) return std::log(0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0));
  return std::log1p(-0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0));
}

inline double logistic_log_cdf(double x) {
  return x > 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

}  // namespace detail

inline double log_cdf(Link link, double x) {
  detail::check_finite(x);
  switch (link.kind) {
    case LinkKind::logistic: return detail::logistic_log_cdf(x);
    case LinkKind::normal: return detail::normal_log_cdf(x);
    case LinkKind::gumbel_max: return -std::exp(-x);
    case LinkKind::gumbel_min: return numeric::log1mexp(-std::exp(x));
  }
  return 0.0;
}

// log(1 - F(x)).
inline double log_sf(Link link, double x) {
  detail::check_finite(x);
  switch (link.kind) {
    case LinkKind::logistic: return detail::logistic_log_cdf(-x);
    case LinkKind::normal: return detail::normal_log_cdf(-x);
    case LinkKind::gumbel_max: return numeric::log1mexp(-std::exp(-x));
    case LinkKind::gumbel_min: return -std::exp(x);
  }
  return 0.0;
}

inline double log_pdf(Link link, double x) {
  detail::check_finite(x);
  switch (link.kind) {
    case LinkKind::logistic: {
      const double a = std::abs(x);
      return -a - 2.0 * std::log1p(std::exp(-a));
    }
    case LinkKind::normal: return -0.5 * x * x - detail::kLogSqrt2Pi;
    case LinkKind::gumbel_max: return -x - std::exp(-x);
    case LinkKind::gumbel_min: return x - std::exp(x);
  }
  return 0.0;
}

// log F(x) - log(1 - F(x)); strictly increasing and well conditioned on the
// whole real line for every link.
inline double logit(Link link, double x) { return log_cdf(link, x) - log_sf(link, x); }

inline double cdf(Link link, double x) {
  detail::check_finite(x);
  double p = 0.0;
  switch (link.kind) {
    case LinkKind::logistic:
      p = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
      break;
    case LinkKind::normal: p = 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); break;
    case LinkKind::gumbel_max: p = std::exp(-std::exp(-x)); break;
    case LinkKind::gumbel_min: p = -std::expm1(-std::exp(x)); break;
  }
  return std::clamp(p, detail::kCdfFloor, detail::kCdfCeil);
}

// Floored like cdf: the gumbel densities underflow to zero for |x| > ~6.6.
inline double pdf(Link link, double x) { return std::max(std::exp(log_pdf(link, x)), detail::kCdfFloor); }

}  // namespace ordlat
