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

#include <cstddef>
#include <span>
#include <vector>

#include "pruneprice/model.hpp"
#include "pruneprice/scalar.hpp"

namespace pruneprice {

struct FractionalSolution {
  Scalar fopt;
  std::vector<Scalar> allocation;  // x_i in [0, 1], indexed like the items
};

struct IntegralSolution {
  Scalar opt;
  std::vector<std::size_t> chosen;  // ascending positions
};

inline constexpr std::size_t kDefaultOracleLimit = 30;

/// Positions sorted by decreasing value-per-cost ratio. Zero-cost items come
/// first; ties keep ascending position. Ratios are compared by
/// cross-multiplication, so zero costs never divide.
std::vector<std::size_t> ratio_order(std::span<const Scalar> values, std::span<const Scalar> costs);

/// Greedy fractional knapsack: take items whole in ratio order, then a
/// fraction of the first one that no longer fits.
FractionalSolution fractional_opt(std::span<const Scalar> values, std::span<const Scalar> costs,
                                  const Scalar& budget);
FractionalSolution fractional_opt(const Instance& instance);

/// Exact 0/1 knapsack by depth-first branch and bound with the fractional
/// relaxation as the bound. Among optimal sets the lexicographically
/// smallest (as an ascending position list) is returned. Throws
/// SizeLimitError above `limit` items.
IntegralSolution integral_opt(std::span<const Scalar> values, std::span<const Scalar> costs,
                              const Scalar& budget, std::size_t limit = kDefaultOracleLimit);
IntegralSolution integral_opt(const Instance& instance, std::size_t limit = kDefaultOracleLimit);

}  // namespace pruneprice
