#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/models.hpp"
#include "ordlat/numeric.hpp"

namespace ordlat {

// Evenly spaced values of one trait coordinate; every other coordinate is
// held at `fixed[d]` (0 when `fixed` is shorter than the model's dimension).
struct ThetaGrid {
  double lower = -10.0;
  double upper = 10.0;
  std::size_t points = 2001;
  std::size_t active_dim = 0;
  std::vector<double> fixed;

  void validate() const {
    require(std::isfinite(lower) && std::isfinite(upper) && lower < upper,
            ErrorKind::InvalidArgument, "grid needs finite lower < upper");
    require(points >= 3, ErrorKind::InvalidArgument, "grid needs at least 3 points");
  }

  std::vector<double> values() const {
    validate();
    return numeric::linspace(lower, upper, points);
  }

  double midpoint() const { return 0.5 * (lower + upper); }

  TraitPoint trait(double theta, std::size_t dims) const {
    std::vector<double> coords(dims, 0.0);
    for (std::size_t d = 0; d < dims && d < fixed.size(); ++d) coords[d] = fixed[d];
    coords.at(active_dim) = theta;
    return TraitPoint(std::move(coords));
  }

  // Trait points along the grid for `model`, with the active dimension checked.
  std::vector<TraitPoint> traits_for(const Model& model) const {
    const std::size_t dims = trait_dims(model);
    if (active_dim >= dims)
      fail(ErrorKind::DimensionMismatch, "grid varies dimension " + std::to_string(active_dim + 1) +
                                             " but the model has " + std::to_string(dims));
    std::vector<TraitPoint> out;
    for (double theta : values()) out.push_back(trait(theta, dims));
    return out;
  }
};

enum class Trend { increasing, flat, decreasing, non_strict, non_monotone };

inline std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::flat: return "flat";
    case Trend::decreasing: return "decreasing";
    case Trend::non_strict: return "non-strict";
    case Trend::non_monotone: return "non-monotone";
  }
  return "?";
}

// Classification of a sampled function by its successive differences.
// `non_strict` covers sequences that move in one direction only but have
// steps within the tolerance.
struct MonotonicityVerdict {
  Trend trend = Trend::flat;
  double min_difference = 0.0;
  double max_difference = 0.0;
  double worst_theta = 0.0;  // left end of the step with the smallest difference
  double tolerance = 0.0;

  bool increasing() const { return trend == Trend::increasing; }
};

inline MonotonicityVerdict classify(std::span<const double> thetas, std::span<const double> values,
                                    double tolerance) {
  require(thetas.size() == values.size() && values.size() >= 2, ErrorKind::InvalidArgument,
          "need matching samples, at least two");
  MonotonicityVerdict v;
  v.tolerance = tolerance;
  v.min_difference = values[1] - values[0];
  v.max_difference = v.min_difference;
  v.worst_theta = thetas[0];
  std::size_t up = 0;
  std::size_t down = 0;
  bool nan = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (std::isnan(d)) {
      nan = true;
      continue;
    }
    if (d < v.min_difference) {
      v.min_difference = d;
      v.worst_theta = thetas[i - 1];
    }
    v.max_difference = std::max(v.max_difference, d);
    if (d > tolerance) ++up;
    else if (d < -tolerance) ++down;
  }
  const std::size_t steps = values.size() - 1;
  if (nan) v.trend = Trend::non_monotone;
  else if (up == steps) v.trend = Trend::increasing;
  else if (down == steps) v.trend = Trend::decreasing;
  else if (up == 0 && down == 0) v.trend = Trend::flat;
  else if (up > 0 && down > 0) v.trend = Trend::non_monotone;
  else v.trend = Trend::non_strict;
  return v;
}

}  // namespace ordlat
