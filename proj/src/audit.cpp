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

#include "pruneprice/audit.hpp"

#include <algorithm>
#include <cmath>

#include "pruneprice/errors.hpp"
#include "pruneprice/knapsack.hpp"
#include "pruneprice/random.hpp"

namespace pruneprice {

void AuditReport::fail(std::optional<std::size_t> item, std::string check, std::string witness) {
  passed = false;
  violations.push_back({item, std::move(check), std::move(witness)});
}

void AuditReport::merge(const AuditReport& other) {
  passed = passed && other.passed;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  checked_points += other.checked_points;
}

// ---------------------------------------------------------------------------
// Exact acceptance probabilities

namespace {

Scalar indicator(bool b) { return b ? Scalar(1) : Scalar(0); }

Scalar clamp_nonnegative(Scalar x) { return x < 0 ? Scalar(0) : x; }

}  // namespace

AllocationProbabilities acceptance_probabilities(const PruneResult& p, const BidProfile& bids,
                                                 const Scalar& budget) {
  AllocationProbabilities out;
  out.x.assign(p.values.size(), Scalar(0));
  out.expected_value = 0;

  if (p.rest.empty()) {
    out.x[p.star] = indicator(bids[p.star] <= p.v_star() / p.r);
  } else {
    const PriceDistribution d = randomized_distribution(p, budget);
    const Scalar width = d.hi - d.lo;  // > 0 whenever T is nonempty

    // i* accepts iff B* >= b*.
    const Scalar& b_star = bids[p.star];
    out.x[p.star] = d.q_star * indicator(b_star <= d.hi) + d.q_rest * indicator(b_star <= d.lo) +
                    d.q * clamp_nonnegative(d.hi - max_of(d.lo, b_star)) / width;

    // i in T accepts iff B* <= B - v(T) b_i / v_i.
    for (std::size_t i : p.rest) {
      const Scalar limit = budget - p.v_rest * bids[i] / p.values[i];
      out.x[i] = d.q_star * indicator(d.hi <= limit) + d.q_rest * indicator(d.lo <= limit) +
                 d.q * clamp_nonnegative(min_of(d.hi, limit) - d.lo) / width;
    }
  }
  for (std::size_t i : p.kept) out.expected_value += p.values[i] * out.x[i];
  return out;
}

// ---------------------------------------------------------------------------
// Ratios and bounds

RatioResult ratio(const Instance& instance, MechanismKind kind, RatioMode mode, std::uint64_t seed,
                  std::size_t trials) {
  RatioResult out;
  out.fopt = fractional_opt(instance).fopt;
  const BidProfile bids = truthful_bids(instance);
  if (mode == RatioMode::monte_carlo) {
    out.alg = monte_carlo(kind, instance, trials, seed).mean_value;
  } else if (kind == MechanismKind::randomized) {
    const auto values = instance.values();
    out.alg = acceptance_probabilities(prune(values, bids, instance.budget), bids, instance.budget).expected_value;
  } else {
    out.alg = run(kind, instance, bids, seed).value;
  }
  if (out.alg != 0) out.ratio = Scalar(out.fopt / out.alg);
  return out;
}

bool within_proven_bound(MechanismKind kind, const Scalar& fopt, const Scalar& alg) {
  switch (kind) {
    case MechanismKind::first_warmup: return fopt <= 4 * alg;
    case MechanismKind::second_warmup: {
      // fopt <= (2 + sqrt 2) alg  <=>  fopt - 2 alg <= 0 or (fopt - 2 alg)^2 <= 2 alg^2
      const Scalar excess = fopt - 2 * alg;
      return excess <= 0 || excess * excess <= 2 * alg * alg;
    }
    case MechanismKind::deterministic: return fopt <= 3 * alg;
    case MechanismKind::randomized: return fopt <= 2 * alg;
  }
  return false;
}

std::string_view proven_bound_label(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::first_warmup: return "4";
    case MechanismKind::second_warmup: return "2+sqrt(2)";
    case MechanismKind::deterministic: return "3";
    case MechanismKind::randomized: return "2";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Truthfulness

namespace {

std::string witness_bid(const Scalar& bid, const Scalar& utility, const Scalar& truthful_utility,
                        std::uint64_t seed) {
  return "bid=" + to_string(bid) + " utility=" + to_string(utility) + " truthful_utility=" +
         to_string(truthful_utility) + " seed=" + std::to_string(seed);
}

}  // namespace

std::vector<Scalar> structural_deviations(const Instance& instance, std::size_t agent, const Outcome& truthful,
                                          const std::optional<Scalar>& truthful_r) {
  const Scalar& cost = instance.items[agent].cost;
  const Scalar& budget = instance.budget;
  const Scalar nudge = budget * inverse_power_of_two(kBisectionDepth);

  std::vector<Scalar> grid{Scalar(0), Scalar(cost / 2), cost, budget};
  if (truthful_r) {
    const Scalar cap = instance.items[agent].value / *truthful_r;
    grid.push_back(cap);
    grid.push_back(cap + nudge);
  }
  for (const auto& offer : truthful.offers) {
    grid.push_back(offer.price);
    if (offer.item == agent) grid.push_back(offer.price + nudge);
  }
  return grid;
}

AuditReport audit_truthfulness(MechanismKind kind, const Instance& instance, std::size_t agent,
                               std::span<const Scalar> deviations, std::span<const std::uint64_t> seeds) {
  validate(instance);
  if (agent >= instance.size()) throw ValidationError("audit: agent out of range");

  std::vector<std::uint64_t> realizations(seeds.begin(), seeds.end());
  if (realizations.empty()) realizations.push_back(0);
  if (kind != MechanismKind::randomized) realizations.resize(1);

  const BidProfile truth = truthful_bids(instance);
  const Scalar& cost = instance.items[agent].cost;
  const Scalar& budget = instance.budget;
  const auto values = instance.values();

  std::optional<Scalar> truthful_r;
  if (std::any_of(truth.bids.begin(), truth.bids.end(), [&](const Scalar& b) { return b <= budget; })) {
    truthful_r = prune(values, truth, budget).r;
  }

  AuditReport report;

  for (std::uint64_t seed : realizations) {
    auto evaluate = [&](const Scalar& bid) {
      ++report.checked_points;
      return run(kind, instance, truth.with_bid(agent, bid), seed);
    };
    auto utility = [&](const Outcome& o) { return o.wins(agent) ? Scalar(o.payment(agent) - cost) : Scalar(0); };

    const Outcome truthful = evaluate(cost);
    const Scalar truthful_utility = utility(truthful);

    std::vector<Scalar> grid = structural_deviations(instance, agent, truthful, truthful_r);
    grid.insert(grid.end(), deviations.begin(), deviations.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::optional<Scalar> first_loss;
    for (const Scalar& bid : grid) {
      const Outcome o = evaluate(bid);
      const bool won = o.wins(agent);
      const Scalar u = utility(o);
      if (u > truthful_utility) {
        report.fail(agent, "profitable-deviation", witness_bid(bid, u, truthful_utility, seed));
      }
      if (won && first_loss) {
        report.fail(agent, "win-region-not-downward-closed",
                    "loses at " + to_string(*first_loss) + " but wins at " + to_string(bid) + " seed=" +
                        std::to_string(seed));
      }
      if (!won && !first_loss) first_loss = bid;
      if (won && bid > budget) {
        report.fail(agent, "over-budget-bid-wins", "bid=" + to_string(bid) + " seed=" + std::to_string(seed));
      }
      if (won && !truthful.wins(agent) && bid > cost) {
        report.fail(agent, "loser-wins-with-higher-bid", "bid=" + to_string(bid) + " seed=" + std::to_string(seed));
      }
    }

    if (!truthful.wins(agent)) continue;

    // Bracket the win/lose boundary: wins at low, loses at high.
    const Scalar payment = truthful.payment(agent);
    Scalar low = cost;
    Scalar high = budget;
    if (evaluate(budget).wins(agent)) {
      low = budget;
      high = budget + budget * inverse_power_of_two(kBisectionDepth);
    } else {
      for (unsigned step = 0; step < kBisectionDepth; ++step) {
        Scalar mid = (low + high) / 2;
        if (evaluate(mid).wins(agent)) {
          low = std::move(mid);
        } else {
          high = std::move(mid);
        }
      }
    }
    const bool low_wins = evaluate(low).wins(agent);
    const bool high_loses = !evaluate(high).wins(agent);
    if (!low_wins || !high_loses) {
      report.fail(agent, "threshold-bracket",
                  "bracket [" + to_string(low) + ", " + to_string(high) + "] does not straddle the boundary seed=" +
                      std::to_string(seed));
    }
    if (payment < low || payment > high) {
      report.fail(agent, "threshold-payment",
                  "payment " + to_string(payment) + " outside bracket [" + to_string(low) + ", " + to_string(high) +
                      "] seed=" + std::to_string(seed));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo

MonteCarloEstimate monte_carlo(MechanismKind kind, const Instance& instance, std::size_t trials,
                               std::uint64_t seed) {
  if (trials == 0) throw ValidationError("monte_carlo: trials must be at least 1");
  validate(instance);
  const BidProfile bids = truthful_bids(instance);
  const auto values = instance.values();
  // Pruning does not consume randomness, so one pass serves every trial.
  const PruneResult p = prune(values, bids, instance.budget);

  std::vector<std::size_t> wins(instance.size(), 0);
  Scalar total = 0;
  std::vector<double> realized;
  realized.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const Outcome o = run_pruned(kind, p, bids, instance.budget, derive_seed(seed, t));
    for (std::size_t i : o.winners) ++wins[i];
    total += o.value;
    realized.push_back(to_double(o.value));
  }

  MonteCarloEstimate out;
  out.trials = trials;
  const double n = static_cast<double>(trials);
  for (std::size_t count : wins) {
    const double f = static_cast<double>(count) / n;
    out.frequency.push_back(f);
    out.frequency_se.push_back(std::sqrt(f * (1 - f) / n));
  }
  out.mean_value = total / static_cast<unsigned long>(trials);
  const double mean = to_double(out.mean_value);
  double squares = 0;
  for (double v : realized) squares += (v - mean) * (v - mean);
  const double variance = trials > 1 ? squares / (n - 1) : 0.0;
  out.value_se = std::sqrt(variance / n);
  return out;
}

// ---------------------------------------------------------------------------
// Outcome checks

AuditReport check_individual_rationality(const Outcome& outcome, const BidProfile& bids) {
  AuditReport report;
  for (std::size_t k = 0; k < outcome.winners.size(); ++k) {
    ++report.checked_points;
    const std::size_t i = outcome.winners[k];
    if (outcome.payments[k] < bids[i]) {
      report.fail(i, "individual-rationality",
                  "payment " + to_string(outcome.payments[k]) + " < bid " + to_string(bids[i]));
    }
  }
  return report;
}

AuditReport check_budget_feasibility(const Outcome& outcome, const Scalar& budget) {
  AuditReport report;
  ++report.checked_points;
  const Scalar total = outcome.total_payment();
  if (total > budget) {
    report.fail(std::nullopt, "budget-feasibility", "total payment " + to_string(total) + " > budget " + to_string(budget));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Structural properties

AuditReport audit_prune_result(const PruneResult& p, const BidProfile& bids, const Scalar& budget) {
  AuditReport report;
  const Scalar rb = p.r * budget;
  if (p.kept.empty()) {
    report.fail(std::nullopt, "kept-nonempty", "kept set is empty");
    return report;
  }
  for (std::size_t i : p.kept) {
    ++report.checked_points;
    if (!(bids[i] * p.r <= p.values[i] && p.values[i] <= rb)) {
      report.fail(i, "kept-ratio-bounds",
                  "b*r=" + to_string(bids[i] * p.r) + " v=" + to_string(p.values[i]) + " rB=" + to_string(rb));
    }
  }
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    if (p.contains(k) || bids[k] > budget) continue;
    ++report.checked_points;
    if (!(p.values[k] <= p.r * bids[k])) {
      report.fail(k, "discard-soundness", "v=" + to_string(p.values[k]) + " r*b=" + to_string(p.r * bids[k]));
    }
  }
  // A lone kept item means the loop never ran: r B = v_max = v(S), and the
  // strict upper bounds below become equalities.
  const bool lone = p.kept.size() == 1;
  ++report.checked_points;
  if (!(p.v_rest <= rb && (lone ? rb == p.v_kept : rb < p.v_kept))) {
    report.fail(std::nullopt, "value-sandwich",
                "v(T)=" + to_string(p.v_rest) + " rB=" + to_string(rb) + " v(S)=" + to_string(p.v_kept));
  }

  // Fractional optimum at the reported bids, over the participating items.
  std::vector<Scalar> values;
  std::vector<Scalar> costs;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (bids[i] > budget) continue;
    values.push_back(p.values[i]);
    costs.push_back(bids[i]);
  }
  const Scalar fopt = fractional_opt(values, costs, budget).fopt;
  const Scalar bound = fopt_bound(p, budget, bids);
  ++report.checked_points;
  if (!(fopt <= bound && (lone ? bound <= 2 * p.v_kept : bound < 2 * p.v_kept))) {
    report.fail(std::nullopt, "fopt-bound",
                "fopt=" + to_string(fopt) + " bound=" + to_string(bound) + " 2v(S)=" + to_string(2 * p.v_kept));
  }
  return report;
}

AuditReport audit_randomized_identities(const PruneResult& p, const BidProfile& bids, const Scalar& budget) {
  AuditReport report;
  if (p.rest.empty()) return report;
  const PriceDistribution d = randomized_distribution(p, budget);
  const Scalar& v_star = p.v_star();

  ++report.checked_points;
  if (d.q_star + d.q_rest + d.q != 1 || d.q < 0 || d.q > Scalar(1, 2) || d.q_star < 0 || d.q_rest < 0) {
    report.fail(std::nullopt, "distribution-weights",
                "q=" + to_string(d.q) + " q_star=" + to_string(d.q_star) + " q_rest=" + to_string(d.q_rest));
  }
  ++report.checked_points;
  if (!(0 <= d.lo && d.lo < d.hi)) {
    report.fail(std::nullopt, "distribution-support", "lo=" + to_string(d.lo) + " hi=" + to_string(d.hi));
  }
  ++report.checked_points;
  const Scalar identity = 2 * d.q_star * v_star + 2 * d.q_rest * p.v_rest;
  if (p.r * budget != identity) {
    report.fail(std::nullopt, "rB-identity", "rB=" + to_string(p.r * budget) + " rhs=" + to_string(identity));
  }

  const AllocationProbabilities probs = acceptance_probabilities(p, bids, budget);
  auto check_side = [&](std::size_t i, const Scalar& weight, const char* name) {
    ++report.checked_points;
    const Scalar lhs = p.values[i] * probs.x[i];
    const Scalar rhs = weight * p.values[i] + (p.values[i] - p.r * bids[i]) / 2;
    if (lhs < rhs) report.fail(i, name, "v*x=" + to_string(lhs) + " < " + to_string(rhs));
    if (probs.x[i] < 0 || probs.x[i] > 1) report.fail(i, "probability-range", "x=" + to_string(probs.x[i]));
  };
  check_side(p.star, d.q_star, "star-acceptance-bound");
  for (std::size_t i : p.rest) check_side(i, d.q_rest, "rest-acceptance-bound");
  return report;
}

}  // namespace pruneprice
