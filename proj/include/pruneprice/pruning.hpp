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

/// Output of the pruning stage: the final ratio r and the kept set S(r),
/// with the aggregates the second-stage mechanisms read.
struct PruneResult {
  Scalar r;
  std::vector<std::size_t> kept;  // ascending positions, never empty
  std::size_t star = 0;           // highest value in kept, lowest position on ties
  std::vector<std::size_t> rest;  // kept without star
  Scalar v_kept;
  Scalar v_rest;
  Scalar c_kept_lower;            // sum of bids over kept
  std::vector<Scalar> values;     // every input value, indexed by position

  const Scalar& v_star() const { return values[star]; }
  bool contains(std::size_t item) const;
};

/// Runs the ratio-raising pruning process exactly, event by event.
///
/// r starts at max v / B and S = {i : v_i >= r * b_i}. While
/// r * B < v(S) - max_{S} v, the lowest-position kept item with v_k <= r * b_k
/// is discarded; when there is none, r jumps to the next event: the ratio at
/// which the loop condition fails, or the smallest item ratio above r.
///
/// Items bidding above the budget never take part (they could not be paid
/// their bid). Throws EmptyMarketError when no item bids within the budget,
/// ValidationError on malformed input.
PruneResult prune(std::span<const Scalar> values, const BidProfile& bids, const Scalar& budget);

/// min(raw, value / r).
Scalar cap_payment(const Scalar& raw, const Scalar& value, const Scalar& r);

/// v(S) + r * (B - sum of bids over S): the upper bound on the fractional
/// optimum at these bids.
Scalar fopt_bound(const PruneResult& p, const Scalar& budget, const BidProfile& bids);

}  // namespace pruneprice
