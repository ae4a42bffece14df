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

#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "pruneprice/mechanisms.hpp"
#include "pruneprice/model.hpp"
#include "pruneprice/pruning.hpp"
#include "pruneprice/random.hpp"
#include "pruneprice/scalar.hpp"

namespace oracle {

using pruneprice::BidProfile;
using pruneprice::Instance;
using pruneprice::Scalar;

inline std::vector<std::size_t> members(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) out.push_back(i);
  }
  return out;
}

struct SubsetOptimum {
  Scalar opt = 0;
  std::vector<std::size_t> chosen;
};

// Every subset; among optimal ones the lexicographically smallest position list.
inline SubsetOptimum best_subset(const std::vector<Scalar>& v, const std::vector<Scalar>& c, const Scalar& budget) {
  const std::size_t n = v.size();
  SubsetOptimum best;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Scalar value = 0, cost = 0;
    for (std::size_t i : members(mask, n)) {
      value += v[i];
      cost += c[i];
    }
    if (cost > budget) continue;
    auto set = members(mask, n);
    if (!have || value > best.opt || (value == best.opt && set < best.chosen)) {
      best.opt = value;
      best.chosen = std::move(set);
      have = true;
    }
  }
  return best;
}

// LP optimum via vertices: some feasible integral set plus at most one
// fractionally taken item.
inline Scalar fractional_vertex_opt(const std::vector<Scalar>& v, const std::vector<Scalar>& c,
                                    const Scalar& budget) {
  const std::size_t n = v.size();
  Scalar best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Scalar value = 0, cost = 0;
    for (std::size_t i : members(mask, n)) {
      value += v[i];
      cost += c[i];
    }
    if (cost > budget) continue;
    best = std::max(best, value);
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1U) continue;
      const Scalar left = budget - cost;
      Scalar extra = c[j] == 0 || c[j] <= left ? v[j] : Scalar(v[j] * left / c[j]);
      best = std::max(best, Scalar(value + extra));
    }
  }
  return best;
}

struct PruneOutcome {
  Scalar r;
  std::vector<std::size_t> kept;
};

// Walks r over every value at which anything could change: the start, each
// item ratio, and (v(S') - max S')/B for every subset S'.
inline PruneOutcome simulate_prune(const std::vector<Scalar>& v, const BidProfile& bids, const Scalar& budget) {
  const std::size_t n = v.size();
  std::vector<std::size_t> part;
  for (std::size_t i = 0; i < n; ++i) {
    if (bids[i] <= budget) part.push_back(i);
  }
  Scalar vmax = 0;
  for (std::size_t i : part) vmax = std::max(vmax, v[i]);
  const Scalar r0 = vmax / budget;

  std::set<Scalar> grid{r0};
  for (std::size_t i : part) {
    if (bids[i] > 0) grid.insert(Scalar(v[i] / bids[i]));
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << part.size()); ++mask) {
    Scalar total = 0, top = 0;
    for (std::size_t k : members(mask, part.size())) {
      total += v[part[k]];
      top = std::max(top, v[part[k]]);
    }
    grid.insert(Scalar((total - top) / budget));
  }

  std::vector<std::size_t> s;
  for (std::size_t i : part) {
    if (v[i] >= r0 * bids[i]) s.push_back(i);
  }
  auto loop_holds = [&](const Scalar& r) {
    Scalar total = 0, top = 0;
    for (std::size_t i : s) {
      total += v[i];
      top = std::max(top, v[i]);
    }
    return r * budget < total - top;
  };
  for (auto it = grid.lower_bound(r0); it != grid.end(); ++it) {
    const Scalar& r = *it;
    while (loop_holds(r)) {
      auto victim = std::find_if(s.begin(), s.end(), [&](std::size_t k) { return v[k] <= r * bids[k]; });
      if (victim == s.end()) break;
      s.erase(victim);
    }
    if (!loop_holds(r)) return {r, s};
  }
  return {Scalar(-1), s};  // unreachable for valid input
}

// Expected value of the randomized mechanism obtained by running it: point
// masses at hi and lo, plus the uniform branch integrated exactly over the
// pieces on which the realized outcome is constant.
inline Scalar integrated_expected_value(const pruneprice::PruneResult& p, const BidProfile& bids,
                                        const Scalar& budget) {
  using namespace pruneprice;
  if (p.rest.empty()) {
    return run_randomized_at(p, bids, budget, PriceDraw{}).value;
  }
  const PriceDistribution d = randomized_distribution(p, budget);
  const Scalar width = d.hi - d.lo;
  auto value_at = [&](const Scalar& u) {
    return run_randomized_at(p, bids, budget, PriceDraw{PriceBranch::uniform, u}).value;
  };
  Scalar total = d.q_star * run_randomized_at(p, bids, budget, PriceDraw{PriceBranch::star, 0}).value +
                 d.q_rest * run_randomized_at(p, bids, budget, PriceDraw{PriceBranch::rest, 0}).value;

  // Breakpoints in u where some acceptance can flip.
  std::set<Scalar> cuts{Scalar(0), Scalar(1)};
  auto add_cut = [&](const Scalar& price) {
    const Scalar u = (price - d.lo) / width;
    if (u > 0 && u < 1) cuts.insert(u);
  };
  add_cut(bids[p.star]);
  for (std::size_t i : p.rest) add_cut(Scalar(budget - bids[i] * p.v_rest / p.values[i]));

  Scalar integral = 0;
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    const Scalar& a = *it;
    const Scalar& b = *std::next(it);
    integral += (b - a) * value_at(Scalar((a + b) / 2));
  }
  return total + d.q * integral;
}

// Independent instance generator for property tests.
struct Draw {
  pruneprice::Engine engine;

  explicit Draw(std::uint64_t seed) : engine(pruneprice::make_engine(seed)) {}

  std::uint64_t below(std::uint64_t bound) { return pruneprice::uniform_below(engine, bound); }

  // lo + (hi - lo) k / grid
  Scalar on_grid(const Scalar& lo, const Scalar& hi, std::uint64_t grid) {
    Scalar step(static_cast<unsigned long>(below(grid + 1)), static_cast<unsigned long>(grid));
    step.canonicalize();
    return lo + (hi - lo) * step;
  }

  Instance instance(std::size_t n, std::uint64_t grid, const Scalar& budget = 1) {
    Instance inst;
    inst.budget = budget;
    for (std::size_t i = 0; i < n; ++i) {
      Scalar value = on_grid(Scalar(1, 10), Scalar(10), grid);
      Scalar cost = below(8) == 0 ? Scalar(0) : on_grid(0, budget, grid);
      inst.items.push_back({i, value, cost});
    }
    return inst;
  }
};

}  // namespace oracle
