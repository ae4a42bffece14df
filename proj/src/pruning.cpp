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

#include "pruneprice/pruning.hpp"

#include <algorithm>
#include <optional>

#include "pruneprice/errors.hpp"

namespace pruneprice {

bool PruneResult::contains(std::size_t item) const {
  return std::binary_search(kept.begin(), kept.end(), item);
}

namespace {

struct KeptTotals {
  Scalar sum;
  std::size_t star;
};

KeptTotals totals(std::span<const Scalar> values, const std::vector<std::size_t>& kept) {
  KeptTotals t{Scalar(0), kept.front()};
  for (std::size_t i : kept) {
    t.sum += values[i];
    if (values[i] > values[t.star]) t.star = i;
  }
  return t;
}

}  // namespace

PruneResult prune(std::span<const Scalar> values, const BidProfile& bids, const Scalar& budget) {
  if (values.empty()) throw ValidationError("prune: no items");
  if (bids.size() != values.size()) throw ValidationError("prune: one bid per item required");
  if (budget <= 0) throw ValidationError("prune: budget must be positive");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) throw ValidationError("prune: values must be positive");
    if (bids[i] < 0) throw ValidationError("prune: bids must be nonnegative");
  }

  std::vector<std::size_t> participants;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (bids[i] <= budget) participants.push_back(i);
  }
  if (participants.empty()) throw EmptyMarketError("prune: every bid exceeds the budget");

  Scalar max_value = values[participants.front()];
  for (std::size_t i : participants) max_value = max_of(max_value, values[i]);
  Scalar r = max_value / budget;

  std::vector<std::size_t> kept;
  for (std::size_t i : participants) {
    if (values[i] >= r * bids[i]) kept.push_back(i);
  }
  // The highest-value participant bids at most B, so it always passes.

  for (;;) {
    const KeptTotals t = totals(values, kept);
    const Scalar slack = t.sum - values[t.star];  // v(S) - max value in S
    if (!(r * budget < slack)) break;

    // Discard one at a time, lowest position first.
    auto discard = std::find_if(kept.begin(), kept.end(), [&](std::size_t k) {
      return values[k] <= r * bids[k];
    });
    if (discard != kept.end()) {
      kept.erase(discard);
      continue;
    }

    // Nothing to discard: advance r to the next event. Zero bids have
    // unbounded ratio and never produce one.
    Scalar next = slack / budget;
    for (std::size_t k : kept) {
      if (bids[k] == 0) continue;
      Scalar ratio = values[k] / bids[k];  // > r, since k is not discardable
      if (ratio < next) next = std::move(ratio);
    }
    r = std::move(next);
  }

  PruneResult out;
  const KeptTotals t = totals(values, kept);
  out.r = std::move(r);
  out.kept = std::move(kept);
  out.star = t.star;
  out.v_kept = t.sum;
  out.v_rest = t.sum - values[t.star];
  out.c_kept_lower = 0;
  for (std::size_t i : out.kept) {
    if (i != out.star) out.rest.push_back(i);
    out.c_kept_lower += bids[i];
  }
  out.values.assign(values.begin(), values.end());
  return out;
}

Scalar cap_payment(const Scalar& raw, const Scalar& value, const Scalar& r) {
  if (r <= 0) throw ValidationError("cap_payment: r must be positive");
  Scalar cap = value / r;
  return raw < cap ? raw : cap;
}

Scalar fopt_bound(const PruneResult& p, const Scalar& budget, const BidProfile& bids) {
  Scalar spent = 0;
  for (std::size_t i : p.kept) spent += bids[i];
  return p.v_kept + p.r * (budget - spent);
}

}  // namespace pruneprice
