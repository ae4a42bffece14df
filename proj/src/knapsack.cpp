// Copyright 2026 The pruneprice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pruneprice/knapsack.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pruneprice/errors.hpp"

namespace pruneprice {

namespace {

void check_sizes(std::span<const Scalar> values, std::span<const Scalar> costs) {
  if (values.size() != costs.size()) throw ValidationError("values and costs differ in length");
}

class BranchAndBound {
 public:
  BranchAndBound(std::span<const Scalar> values, std::span<const Scalar> costs, const Scalar& budget)
      : values_(values), costs_(costs), budget_(budget), order_(ratio_order(values, costs)),
        taken_(values.size(), false) {}

  IntegralSolution solve() {
    best_value_ = -1;
    search(0, Scalar(0), Scalar(0));
    IntegralSolution out;
    out.opt = best_value_;
    out.chosen = best_set_;
    return out;
  }

 private:
  // Relaxation of the undecided suffix of the ratio order.
  Scalar bound(std::size_t depth, const Scalar& value, const Scalar& cost) const {
    Scalar room = budget_ - cost;
    Scalar total = value;
    for (std::size_t k = depth; k < order_.size(); ++k) {
      const std::size_t i = order_[k];
      if (costs_[i] <= room) {
        room -= costs_[i];
        total += values_[i];
      } else {
        total += values_[i] * room / costs_[i];
        break;
      }
    }
    return total;
  }

  std::vector<std::size_t> current_set() const {
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < taken_.size(); ++i) {
      if (taken_[i]) set.push_back(i);
    }
    return set;
  }

  void search(std::size_t depth, const Scalar& value, const Scalar& cost) {
    if (depth == order_.size()) {
      if (value > best_value_) {
        best_value_ = value;
        best_set_ = current_set();
      } else if (value == best_value_) {
        auto set = current_set();
        if (std::lexicographical_compare(set.begin(), set.end(), best_set_.begin(), best_set_.end())) {
          best_set_ = std::move(set);
        }
      }
      return;
    }
    // Equal bounds are still explored: they may hold a lexicographically
    // smaller optimum.
    if (bound(depth, value, cost) < best_value_) return;

    const std::size_t i = order_[depth];
    if (cost + costs_[i] <= budget_) {
      taken_[i] = true;
      search(depth + 1, Scalar(value + values_[i]), Scalar(cost + costs_[i]));
      taken_[i] = false;
    }
    search(depth + 1, value, cost);
  }

  std::span<const Scalar> values_;
  std::span<const Scalar> costs_;
  const Scalar& budget_;
  std::vector<std::size_t> order_;
  std::vector<bool> taken_;
  Scalar best_value_;
  std::vector<std::size_t> best_set_;
};

}  // namespace

std::vector<std::size_t> ratio_order(std::span<const Scalar> values, std::span<const Scalar> costs) {
  check_sizes(values, costs);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // v_a / c_a > v_b / c_b  <=>  v_a * c_b > v_b * c_a  (costs >= 0, values > 0)
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] * costs[b] > values[b] * costs[a];
  });
  return order;
}

FractionalSolution fractional_opt(std::span<const Scalar> values, std::span<const Scalar> costs,
                                  const Scalar& budget) {
  check_sizes(values, costs);
  FractionalSolution out;
  out.fopt = 0;
  out.allocation.assign(values.size(), Scalar(0));
  Scalar room = budget;
  for (std::size_t i : ratio_order(values, costs)) {
    if (costs[i] <= room) {
      out.allocation[i] = 1;
      room -= costs[i];
      out.fopt += values[i];
    } else {
      // costs[i] > room >= 0 here
      out.allocation[i] = room / costs[i];
      out.fopt += values[i] * out.allocation[i];
      break;
    }
  }
  return out;
}

FractionalSolution fractional_opt(const Instance& instance) {
  const auto values = instance.values();
  const auto costs = instance.costs();
  return fractional_opt(values, costs, instance.budget);
}

IntegralSolution integral_opt(std::span<const Scalar> values, std::span<const Scalar> costs,
                              const Scalar& budget, std::size_t limit) {
  check_sizes(values, costs);
  if (values.size() > limit) {
    throw SizeLimitError("exact knapsack limited to " + std::to_string(limit) + " items, instance has " +
                         std::to_string(values.size()));
  }
  return BranchAndBound(values, costs, budget).solve();
}

IntegralSolution integral_opt(const Instance& instance, std::size_t limit) {
  const auto values = instance.values();
  const auto costs = instance.costs();
  return integral_opt(values, costs, instance.budget, limit);
}

}  // namespace pruneprice
