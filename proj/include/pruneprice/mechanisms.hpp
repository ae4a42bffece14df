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

#include <array>
#include <cstdint>
#include <string_view>

#include "pruneprice/model.hpp"
#include "pruneprice/pruning.hpp"
#include "pruneprice/scalar.hpp"

namespace pruneprice {

enum class MechanismKind { first_warmup, second_warmup, deterministic, randomized };

inline constexpr std::array<MechanismKind, 4> kAllMechanisms{
    MechanismKind::first_warmup, MechanismKind::second_warmup, MechanismKind::deterministic,
    MechanismKind::randomized};

std::string_view to_string(MechanismKind kind);
/// Accepts "first-warmup", "second-warmup", "deterministic", "randomized".
MechanismKind parse_mechanism(std::string_view name);

// Second stages. Each posts take-it-or-leave-it prices to kept items; an
// item accepts when its bid is at most the price. Outcomes refer to item
// positions.

/// i* alone at v*/r if v* >= v(T), else every item of T at v_i/r.
Outcome run_first_warmup(const PruneResult& p, const BidProfile& bids, const Scalar& budget);

/// i* alone at v*/r if v* >= sqrt(2) v(T) (tested as v*^2 >= 2 v(T)^2);
/// otherwise T at v_i/r and i* at B - v(T)/r.
Outcome run_second_warmup(const PruneResult& p, const BidProfile& bids, const Scalar& budget);

/// Adaptive posted prices:
///   2 v* <= v(T)     -> T at v_i/r
///   v* >= 2 v(T)     -> i* at v*/r
///   otherwise        -> i* at B* = min(v*/r, (2 v* - v(T)) B / v(S)); if it
///                       accepts, each i in T at min(v_i/r, v_i/v(T) (B - B*)),
///                       else T at v_i/r.
Outcome run_deterministic(const PruneResult& p, const BidProfile& bids, const Scalar& budget);

/// Mixture over the price offered to i*: point mass q_star at hi, point mass
/// q_rest at lo, and weight q spread uniformly on [lo, hi].
struct PriceDistribution {
  Scalar q;
  Scalar q_star;
  Scalar q_rest;
  Scalar lo;  // B - v(T)/r
  Scalar hi;  // v*/r
};

/// Throws DegenerateSupportError when T is empty.
PriceDistribution randomized_distribution(const PruneResult& p, const Scalar& budget);

enum class PriceBranch { star, rest, uniform };

/// One realization of the randomized price: the branch and, for the uniform
/// branch, the fraction u in [0, 1) so that B* = lo + u (hi - lo).
struct PriceDraw {
  PriceBranch branch = PriceBranch::star;
  Scalar fraction;
};

/// Two raw 64-bit words from a generator seeded with `seed`: the first picks
/// the branch against the cut points [0, q_star), [q_star, q_star + q_rest),
/// the second is the uniform fraction. Both are always consumed.
PriceDraw draw_price(const PriceDistribution& dist, std::uint64_t seed);

Scalar star_price(const PriceDistribution& dist, const PriceDraw& draw);

/// Posts B* to i* and v_i/v(T) (B - B*) to every i in T. The posted prices
/// sum to B. With T empty, i* is offered v*/r.
Outcome run_randomized_at(const PruneResult& p, const BidProfile& bids, const Scalar& budget,
                          const PriceDraw& draw);
Outcome run_randomized(const PruneResult& p, const BidProfile& bids, const Scalar& budget,
                       std::uint64_t seed);

/// Dispatch to the second stage of `kind`. `seed` is ignored by the
/// deterministic kinds.
Outcome run_second_stage(MechanismKind kind, const PruneResult& p, const BidProfile& bids,
                         const Scalar& budget, std::uint64_t seed);

/// Composition step: caps every winner's payment at v_i/r.
Outcome apply_payment_cap(Outcome outcome, const PruneResult& p);

/// Second stage plus payment cap on an already pruned market.
Outcome run_pruned(MechanismKind kind, const PruneResult& p, const BidProfile& bids,
                   const Scalar& budget, std::uint64_t seed);

/// Full mechanism: prune, second stage, payment cap. Items that are pruned
/// or bid above the budget lose and are paid nothing; if nobody bids within
/// the budget the outcome is empty.
Outcome run(MechanismKind kind, const Instance& instance, const BidProfile& bids, std::uint64_t seed);

}  // namespace pruneprice
