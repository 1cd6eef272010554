#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "ordlat/error.hpp"
#include "ordlat/grid.hpp"
#include "ordlat/models.hpp"
#include "ordlat/strength.hpp"

namespace ordlat {

// Items sharing one category count. Ordering works step by step on the
// conditional step functions; items as a whole are never ordered.
struct ItemSet {
  std::vector<Model> items;

  std::size_t k() const { return max_category(items.front()); }

  void validate() const {
    require(!items.empty(), ErrorKind::InvalidArgument, "item set is empty");
    const std::size_t k0 = max_category(items.front());
    for (std::size_t i = 0; i < items.size(); ++i) {
      ordlat::validate(items[i]);
      if (max_category(items[i]) != k0)
        fail(ErrorKind::ArityMismatch, "item " + std::to_string(i + 1) + " has " +
                                           std::to_string(max_category(items[i]) + 1) +
                                           " categories, item 1 has " + std::to_string(k0 + 1));
    }
  }
};

// One conditional trace P(Y_i >= r | Y_i >= r-1) per item on a shared grid.
inline std::vector<FunctionTrace> step_traces(const ItemSet& set, std::size_t r,
                                              const ThetaGrid& grid) {
  set.validate();
  std::vector<FunctionTrace> out;
  for (const auto& item : set.items) out.push_back(trace_g(item, DefiningFunction::conditional, r, grid));
  return out;
}

// Trait values where the two traces swap order, located by linear
// interpolation of their difference between grid points.
inline std::vector<double> crossings(const FunctionTrace& a, const FunctionTrace& b,
                                     double tolerance = 1e-12) {
  require(a.theta == b.theta, ErrorKind::InvalidArgument, "traces must share a grid");
  std::vector<double> out;
  int last_sign = 0;
  double last_theta = 0.0;
  double last_diff = 0.0;
  for (std::size_t i = 0; i < a.theta.size(); ++i) {
    const double d = a.value[i] - b.value[i];
    const int sign = d > tolerance ? 1 : (d < -tolerance ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      const double w = last_diff / (last_diff - d);
      out.push_back(last_theta + w * (a.theta[i] - last_theta));
    }
    last_sign = sign;
    last_theta = a.theta[i];
    last_diff = d;
  }
  return out;
}

struct OrderingRecord {
  std::size_t step = 1;
  // order[rank] = item index; ranks run from the lowest step function up.
  std::vector<std::size_t> order;
  std::vector<double> midpoint_values;                // per item
  std::vector<std::optional<double>> step_parameters; // per item, closed-form families
  bool invariant = false;

  std::size_t rank_of(std::size_t item) const {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), item) - order.begin());
  }
};

inline constexpr double kOrderingTieTolerance = 1e-12;

// Sorts items by their step-r function at the grid midpoint (ties keep item
// order) and checks that the sorted functions stay ordered at every grid
// point.
inline OrderingRecord invariant_step_ordering(const ItemSet& set, std::size_t r,
                                              const ThetaGrid& grid) {
  const auto traces = step_traces(set, r, grid);
  OrderingRecord rec;
  rec.step = r;
  const double mid = grid.midpoint();
  for (const auto& item : set.items) {
    rec.midpoint_values.push_back(continuation_probability(item, grid.trait(mid, trait_dims(item)), r));
    std::optional<double> param;
    if (const auto* sm = std::get_if<SequentialModel>(&item)) param = sm->steps[r - 1];
    rec.step_parameters.push_back(param);
  }
  rec.order.resize(set.items.size());
  std::iota(rec.order.begin(), rec.order.end(), std::size_t{0});
  std::stable_sort(rec.order.begin(), rec.order.end(), [&](std::size_t a, std::size_t b) {
    return rec.midpoint_values[a] < rec.midpoint_values[b];
  });
  rec.invariant = true;
  for (std::size_t j = 1; j < rec.order.size() && rec.invariant; ++j) {
    const auto& lower = traces[rec.order[j - 1]].value;
    const auto& upper = traces[rec.order[j]].value;
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (lower[i] > upper[i] + kOrderingTieTolerance) {
        rec.invariant = false;
        break;
      }
  }
  return rec;
}

}  // namespace ordlat
