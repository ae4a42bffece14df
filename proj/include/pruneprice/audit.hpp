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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pruneprice/mechanisms.hpp"
#include "pruneprice/model.hpp"
#include "pruneprice/pruning.hpp"
#include "pruneprice/scalar.hpp"

namespace pruneprice {

struct Violation {
  std::optional<std::size_t> item;  // position; empty for whole-outcome checks
  std::string check;
  std::string witness;
};

struct AuditReport {
  bool passed = true;
  std::vector<Violation> violations;
  std::size_t checked_points = 0;

  void fail(std::optional<std::size_t> item, std::string check, std::string witness);
  void merge(const AuditReport& other);
};

/// Exact acceptance probability of every item under the randomized
/// mechanism (zero for pruned items) and the expected value sum v_i x_i.
struct AllocationProbabilities {
  std::vector<Scalar> x;
  Scalar expected_value;
};

/// Evaluates each kept item's acceptance event against the three-part price
/// mixture. i* accepts when B* >= b*; an item i of T accepts when
/// B* <= B - v(T) b_i / v_i. With T empty, i* is bought with certainty.
AllocationProbabilities acceptance_probabilities(const PruneResult& p, const BidProfile& bids,
                                                 const Scalar& budget);

enum class RatioMode { exact, monte_carlo };

struct RatioResult {
  Scalar fopt;
  Scalar alg;
  std::optional<Scalar> ratio;  // empty when alg == 0 (infinite ratio)

  bool infinite() const { return !ratio.has_value(); }
};

/// fopt / alg at truthful bids. alg is the run's value for deterministic
/// kinds, the exact expected value for the randomized kind in exact mode,
/// and the exact mean of `trials` realizations in Monte-Carlo mode.
RatioResult ratio(const Instance& instance, MechanismKind kind, RatioMode mode, std::uint64_t seed,
                  std::size_t trials);

/// Whether fopt <= bound * alg for the kind's proven bound (4, 2 + sqrt 2,
/// 3, 2). The irrational bound is checked in squared form.
bool within_proven_bound(MechanismKind kind, const Scalar& fopt, const Scalar& alg);
std::string_view proven_bound_label(MechanismKind kind);

inline constexpr unsigned kBisectionDepth = 40;

/// Deviation points every truthfulness audit uses for one agent: 0, c/2, c,
/// every price posted in the truthful run, v/r (when r is known), B, and a
/// point 2^-40 B above the agent's own offer and above v/r.
std::vector<Scalar> structural_deviations(const Instance& instance, std::size_t agent, const Outcome& truthful,
                                          const std::optional<Scalar>& truthful_r);

/// Per realization (seed): no deviation on the grid beats the truthful
/// utility; the win region is downward-closed on the grid; a truthful
/// loser never wins at a higher grid bid; a truthful winner's payment lies
/// inside the win/lose bracket found by bisection to 2^-40 B; no bid above
/// the budget wins. The grid is
/// `deviations` plus the structural points. Deterministic kinds use only
/// the first seed (or 0).
AuditReport audit_truthfulness(MechanismKind kind, const Instance& instance, std::size_t agent,
                               std::span<const Scalar> deviations, std::span<const std::uint64_t> seeds);

struct MonteCarloEstimate {
  std::size_t trials = 0;
  std::vector<double> frequency;     // empirical acceptance rate per item
  std::vector<double> frequency_se;  // binomial standard error of each rate
  Scalar mean_value;                 // exact mean realized value
  double value_se = 0;
};

/// `trials` independent realizations at truthful bids; trial t uses seed
/// derive_seed(seed, t), so results do not depend on evaluation order.
MonteCarloEstimate monte_carlo(MechanismKind kind, const Instance& instance, std::size_t trials,
                               std::uint64_t seed);

AuditReport check_individual_rationality(const Outcome& outcome, const BidProfile& bids);
AuditReport check_budget_feasibility(const Outcome& outcome, const Scalar& budget);

/// Properties of a pruning result at the given bids: every kept i has
/// b_i r <= v_i <= r B; v(T) <= r B < v(S); fopt(at bids) <= v(S) + r (B - c(S))
/// < 2 v(S); discarded participants have v_k <= r b_k. When S is a single
/// item the two strict bounds hold with equality allowed (r B = v(S) there).
AuditReport audit_prune_result(const PruneResult& p, const BidProfile& bids, const Scalar& budget);

/// For nonempty T: r B = 2 q_star v* + 2 q_rest v(T), the distribution's
/// range constraints, and the two per-item acceptance lower bounds
/// v_i x_i >= q_side v_i + (v_i - r b_i) / 2.
AuditReport audit_randomized_identities(const PruneResult& p, const BidProfile& bids, const Scalar& budget);

}  // namespace pruneprice
