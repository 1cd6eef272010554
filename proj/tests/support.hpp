#pragma once

// Random model generators shared by the property tests and the acceptance
// binary. Parameters are drawn from a normal distribution with mean 0 and
// standard deviation 2; cumulative thresholds are sorted.

#include <algorithm>
#include <random>
#include <vector>

#include "ordlat/models.hpp"

namespace ordlat::fixtures {

enum class Classical { cumulative, sequential, adjacent };

inline constexpr Classical kClassical[] = {Classical::cumulative, Classical::sequential,
                                           Classical::adjacent};

inline const char* name(Classical f) {
  switch (f) {
    case Classical::cumulative: return "cumulative";
    case Classical::sequential: return "sequential";
    case Classical::adjacent: return "adjacent";
  }
  return "?";
}

inline std::vector<double> draw_params(std::mt19937_64& rng, std::size_t n, double sd = 2.0) {
  std::normal_distribution<double> normal(0.0, sd);
  std::vector<double> out(n);
  for (double& x : out) x = normal(rng);
  return out;
}

inline std::vector<double> draw_thresholds(std::mt19937_64& rng, std::size_t k) {
  for (;;) {
    auto d = draw_params(rng, k);
    std::sort(d.begin(), d.end());
    if (std::adjacent_find(d.begin(), d.end()) == d.end()) return d;
  }
}

inline Model draw_classical(std::mt19937_64& rng, Classical family, Link link, std::size_t k) {
  switch (family) {
    case Classical::cumulative: return make_cumulative(link, draw_thresholds(rng, k));
    case Classical::sequential: return make_sequential(link, draw_params(rng, k));
    case Classical::adjacent: return make_adjacent(link, draw_params(rng, k));
  }
  return {};
}

inline BockModel draw_bock(std::mt19937_64& rng, std::size_t k) {
  return make_bock(draw_params(rng, k), draw_params(rng, k));
}

}  // namespace ordlat::fixtures
