#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/grid.hpp"
#include "ordlat/models.hpp"
#include "ordlat/numeric.hpp"
#include "ordlat/ordinality.hpp"

namespace ordlat {

enum class Separation { split_not_conditional, conditional_not_paired };

inline std::string_view to_string(Separation s) {
  return s == Separation::split_not_conditional ? "split-not-conditional" : "conditional-not-paired";
}

inline Separation parse_separation(std::string_view token) {
  if (token == "split-not-conditional") return Separation::split_not_conditional;
  if (token == "conditional-not-paired") return Separation::conditional_not_paired;
  fail(ErrorKind::InvalidArgument, "unknown separation target '" + std::string(token) + "'");
}

struct SearchConfig {
  std::size_t k = 2;
  std::size_t knots = 5;
  std::size_t budget = 100000;
  std::uint64_t seed = 0;
  // Smallest category probability a candidate may have at any knot.
  double min_probability = 1e-3;
  ThetaGrid grid;
};

struct Counterexample {
  TabulatedModel model;
  HierarchyRecord verdicts;
  std::size_t draws = 0;
};

namespace detail {

// One random table whose tail probabilities are strictly increasing at the
// knots, hence along every linear segment: split-ordinal by construction.
inline std::optional<TabulatedModel> draw_split_ordinal_table(std::mt19937_64& rng,
                                                              const SearchConfig& cfg) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = cfg.k;
  const std::size_t n = cfg.knots;
  // tails[r][j] = P(Y >= r+1) at knot j
  std::vector<std::vector<double>> tails(k, std::vector<double>(n));
  for (auto& row : tails) {
    for (double& v : row) v = unit(rng);
    std::sort(row.begin(), row.end());
  }
  // Order statistics across r keep each row increasing in j.
  std::vector<double> column(k);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < k; ++r) column[r] = tails[r][j];
    std::sort(column.begin(), column.end(), std::greater<>());
    for (std::size_t r = 0; r < k; ++r) tails[r][j] = column[r];
  }
  std::vector<std::vector<double>> probs(n, std::vector<double>(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    double upper = 1.0;
    for (std::size_t r = 0; r < k; ++r) {
      probs[j][r] = upper - tails[r][j];
      upper = tails[r][j];
    }
    probs[j][k] = upper;
    for (double p : probs[j])
      if (p < cfg.min_probability) return std::nullopt;
  }
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t r = 0; r < k; ++r)
      if (!(tails[r][j] > tails[r][j - 1])) return std::nullopt;
  return TabulatedModel{numeric::linspace(cfg.grid.lower, cfg.grid.upper, n), std::move(probs)};
}

}  // namespace detail

// Randomized search for a piecewise-linear probability table that satisfies
// the weaker concept of `target` but not the stronger one. With two
// categories the three concepts coincide, so k = 1 fails immediately.
inline Counterexample find_counterexample(Separation target, const SearchConfig& cfg = {}) {
  require(cfg.knots >= 2, ErrorKind::InvalidArgument, "need at least 2 knots");
  if (cfg.k < 2)
    fail(ErrorKind::SearchFailed, "no " + std::string(to_string(target)) +
                                      " model exists with two categories: all concepts coincide");
  cfg.grid.validate();
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t draw = 1; draw <= cfg.budget; ++draw) {
    auto table = detail::draw_split_ordinal_table(rng, cfg);
    if (!table) continue;
    const Model candidate = *table;
    const bool conditional = check_conditional(candidate, cfg.grid).overall;
    bool hit = false;
    if (target == Separation::split_not_conditional) {
      hit = !conditional && check_split(candidate, cfg.grid).overall;
    } else if (conditional) {
      hit = !check_paired(candidate, cfg.grid).overall;
    }
    if (!hit) continue;
    Counterexample out{std::move(*table), verify_hierarchy(candidate, cfg.grid), draw};
    validate(out.model);
    return out;
  }
  fail(ErrorKind::SearchFailed, "no " + std::string(to_string(target)) + " table found in " +
                                    std::to_string(cfg.budget) + " draws");
}

}  // namespace ordlat
