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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pruneprice/audit.hpp"
#include "pruneprice/knapsack.hpp"

using namespace pruneprice;

namespace {

Scalar q(long n, long d = 1) { return make_scalar(n, d); }

Instance d1() { return Instance{4, {{0, 6, 2}, {1, 4, 2}, {2, 2, 2}}}; }

Instance d2() { return Instance{1, {{0, 1, q(1, 2)}, {1, 1, q(1, 2)}, {2, 1, q(1, 2)}, {3, 1, q(1, 2)}}}; }

AllocationProbabilities probabilities(const Instance& inst, const BidProfile& bids) {
  const auto v = inst.values();
  return acceptance_probabilities(prune(v, bids, inst.budget), bids, inst.budget);
}

AllocationProbabilities probabilities(const Instance& inst) { return probabilities(inst, truthful_bids(inst)); }

}  // namespace

TEST_CASE("acceptance probabilities of the worked examples") {
  const AllocationProbabilities a = probabilities(d2());
  CHECK(a.x == std::vector<Scalar>{0, 0, q(1, 2), q(1, 2)});
  CHECK(a.expected_value == 1);

  const auto lb = gen_lower_bound(q(1, 100), 1);
  const AllocationProbabilities b = probabilities(lb.instance);
  CHECK(b.x == std::vector<Scalar>{1, 0, q(1, 2)});
  CHECK(b.expected_value == q(3, 2));

  // D1: q = q* = 1/2 on [4/3, 4]. i* accepts at hi, and on [2, 4] of the
  // uniform part; item 1 accepts only when B* <= 2.
  const AllocationProbabilities c = probabilities(d1());
  CHECK(c.x == std::vector<Scalar>{q(7, 8), q(1, 8), 0});
  CHECK(c.expected_value == q(23, 4));

  // i* bidding above hi is never bought
  const AllocationProbabilities d = probabilities(d1(), BidProfile{{q(9, 2), 2, 2}});
  CHECK(d.x[0] == 0);

  const AllocationProbabilities e = probabilities(Instance{10, {{0, 5, 3}}});
  CHECK(e.x == std::vector<Scalar>{1});
  CHECK(e.expected_value == 5);
}

TEST_CASE("closed-form probabilities agree with integrating the mechanism") {
  for (std::uint64_t seed = 0; seed < 800; ++seed) {
    oracle::Draw draw(seed + 300);
    const Instance inst = draw.instance(1 + draw.below(9), std::vector<std::uint64_t>{2, 4, 10, 1000}[seed % 4]);
    BidProfile bids = truthful_bids(inst);
    if (seed % 2) {
      for (auto& b : bids.bids) {
        if (draw.below(2) == 0) b = draw.on_grid(0, inst.budget, 12);
      }
    }
    const auto v = inst.values();
    const PruneResult p = prune(v, bids, inst.budget);
    const AllocationProbabilities probs = acceptance_probabilities(p, bids, inst.budget);
    CAPTURE(serialize(inst, &bids));

    Scalar sum = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      CHECK(probs.x[i] >= 0);
      CHECK(probs.x[i] <= 1);
      if (!p.contains(i)) CHECK(probs.x[i] == 0);
      sum += v[i] * probs.x[i];
    }
    CHECK(sum == probs.expected_value);
    CHECK(probs.expected_value == oracle::integrated_expected_value(p, bids, inst.budget));

    CHECK(audit_randomized_identities(p, bids, inst.budget).passed);
    if (bids == truthful_bids(inst)) {
      CHECK(2 * probs.expected_value >= fractional_opt(inst).fopt);
    }
  }
}

TEST_CASE("approximation ratios") {
  const auto lb = gen_lower_bound(q(1, 100), 1);
  const RatioResult a = ratio(lb.instance, MechanismKind::deterministic, RatioMode::exact, 0, 1);
  REQUIRE_FALSE(a.infinite());
  CHECK(*a.ratio == q(599, 200));

  const RatioResult b = ratio(d2(), MechanismKind::randomized, RatioMode::exact, 0, 1);
  CHECK(b.fopt == 2);
  CHECK(b.alg == 1);
  CHECK(*b.ratio == 2);

  for (MechanismKind kind : kAllMechanisms) {
    const RatioResult c = ratio(Instance{10, {{0, 5, 3}}}, kind, RatioMode::exact, 0, 1);
    CHECK(*c.ratio == 1);
  }

  // Monte-Carlo mode averages realizations exactly: on D2 every draw is worth 0 or 2.
  const RatioResult mc = ratio(d2(), MechanismKind::randomized, RatioMode::monte_carlo, 3, 1000);
  CHECK(mc.alg > q(8, 10));
  CHECK(mc.alg < q(12, 10));
}

TEST_CASE("proven bounds") {
  CHECK(within_proven_bound(MechanismKind::first_warmup, 4, 1));
  CHECK_FALSE(within_proven_bound(MechanismKind::first_warmup, q(40001, 10000), 1));
  CHECK(within_proven_bound(MechanismKind::deterministic, 3, 1));
  CHECK_FALSE(within_proven_bound(MechanismKind::deterministic, q(3001, 1000), 1));
  CHECK(within_proven_bound(MechanismKind::randomized, 2, 1));
  CHECK_FALSE(within_proven_bound(MechanismKind::randomized, q(2001, 1000), 1));
  // 2 + sqrt 2 = 3.41421...
  CHECK(within_proven_bound(MechanismKind::second_warmup, 34, 10));
  CHECK_FALSE(within_proven_bound(MechanismKind::second_warmup, q(3415, 100), 10));
  CHECK(within_proven_bound(MechanismKind::second_warmup, q(34142, 10000), 1));
  CHECK_FALSE(within_proven_bound(MechanismKind::second_warmup, q(34143, 10000), 1));
  CHECK(within_proven_bound(MechanismKind::second_warmup, 1, 1));
  CHECK_FALSE(within_proven_bound(MechanismKind::deterministic, 1, 0));
  CHECK(proven_bound_label(MechanismKind::second_warmup) == "2+sqrt(2)");
}

TEST_CASE("truthfulness audit on the worked examples") {
  const std::vector<Scalar> grid{0, 1, 2, 3, q(16, 5), q(7, 2), 4};
  const std::vector<std::uint64_t> seeds{0};
  const AuditReport a = audit_truthfulness(MechanismKind::deterministic, d1(), 0, grid, seeds);
  CHECK(a.passed);
  CHECK(a.checked_points > grid.size());
  CHECK(run(MechanismKind::deterministic, d1(), truthful_bids(d1()), 0).payment(0) == q(16, 5));

  const auto lb = gen_lower_bound(q(1, 100), 1);
  const std::vector<Scalar> lb_grid{0, q(1, 4), q(1, 2), q(3, 5), 1};
  CHECK(audit_truthfulness(MechanismKind::deterministic, lb.instance, 0, lb_grid, seeds).passed);
  CHECK(run(MechanismKind::deterministic, lb.instance, lb.bids, 0).payment(0) == q(1, 2));

  std::vector<std::uint64_t> many;
  for (std::uint64_t s = 0; s < 16; ++s) many.push_back(derive_seed(9, s));
  for (std::size_t agent = 0; agent < 4; ++agent) {
    CHECK(audit_truthfulness(MechanismKind::randomized, d2(), agent, {}, many).passed);
  }
}

TEST_CASE("an item bidding above the budget never wins") {
  const Instance inst{1, {{0, 3, 2}, {1, 1, q(1, 3)}, {2, 1, q(1, 4)}}};
  const std::vector<Scalar> grid{q(1, 2), 1, q(3, 2), 2, 5};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  for (MechanismKind kind : kAllMechanisms) {
    CHECK(audit_truthfulness(kind, inst, 0, grid, seeds).passed);
    for (std::uint64_t s : seeds) CHECK_FALSE(run(kind, inst, truthful_bids(inst), s).wins(0));
  }
}

TEST_CASE("truthfulness audit on random markets") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    oracle::Draw draw(seed + 5000);
    const Instance inst = draw.instance(1 + draw.below(7), seed % 2 ? 10 : 1000);
    std::vector<Scalar> grid;
    for (int k = 0; k < 5; ++k) grid.push_back(draw.on_grid(0, inst.budget, 20));
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 4; ++s) seeds.push_back(derive_seed(seed, s));
    for (MechanismKind kind : kAllMechanisms) {
      for (std::size_t agent = 0; agent < inst.size(); ++agent) {
        const AuditReport report = audit_truthfulness(kind, inst, agent, grid, seeds);
        CAPTURE(serialize(inst));
        CAPTURE(to_string(kind));
        CAPTURE(agent);
        const std::string why =
            report.passed ? "" : report.violations.front().check + " " + report.violations.front().witness;
        CHECK_MESSAGE(report.passed, why);
      }
    }
  }
}

TEST_CASE("structural deviation points") {
  const Outcome o = run(MechanismKind::deterministic, d1(), truthful_bids(d1()), 0);
  const auto points = structural_deviations(d1(), 0, o, q(3, 2));
  auto has = [&](const Scalar& x) { return std::find(points.begin(), points.end(), x) != points.end(); };
  CHECK(has(0));
  CHECK(has(1));
  CHECK(has(2));
  CHECK(has(q(16, 5)));
  CHECK(has(4));
  CHECK(has(q(16, 5) + inverse_power_of_two(40) * 4));
}

TEST_CASE("rationality and budget checks") {
  const Outcome o = run(MechanismKind::deterministic, d1(), truthful_bids(d1()), 0);
  CHECK(check_individual_rationality(o, truthful_bids(d1())).passed);
  CHECK(check_budget_feasibility(o, 4).passed);

  Outcome greedy;
  greedy.value = 0;
  greedy.award(0, 8, 6);
  const AuditReport over = check_budget_feasibility(greedy, 4);
  CHECK_FALSE(over.passed);
  REQUIRE(over.violations.size() == 1);
  CHECK_FALSE(over.violations[0].witness.empty());

  Outcome cheap;
  cheap.value = 0;
  cheap.award(1, 1, 4);
  const AuditReport ir = check_individual_rationality(cheap, truthful_bids(d1()));
  CHECK_FALSE(ir.passed);
  REQUIRE(ir.violations.size() == 1);
  CHECK(*ir.violations[0].item == 1);

  Outcome empty;
  empty.value = 0;
  CHECK(check_individual_rationality(empty, truthful_bids(d1())).passed);
  CHECK(check_budget_feasibility(empty, 4).passed);

  AuditReport merged;
  merged.merge(ir);
  merged.merge(over);
  CHECK_FALSE(merged.passed);
  CHECK(merged.violations.size() == 2);
}

TEST_CASE("Monte-Carlo estimates") {
  const MonteCarloEstimate a = monte_carlo(MechanismKind::randomized, d2(), 100'000, 42);
  const std::vector<double> expect{0, 0, 0.5, 0.5};
  for (std::size_t i = 0; i < 4; ++i) {
    const double se = std::sqrt(expect[i] * (1 - expect[i]) / 100'000.0);
    CHECK(std::abs(a.frequency[i] - expect[i]) <= 3 * se);
  }
  const MonteCarloEstimate again = monte_carlo(MechanismKind::randomized, d2(), 100'000, 42);
  CHECK(again.frequency == a.frequency);
  CHECK(again.mean_value == a.mean_value);

  const MonteCarloEstimate b = monte_carlo(MechanismKind::deterministic, d1(), 10, 7);
  CHECK(b.frequency == std::vector<double>{1, 0, 0});
  CHECK(b.mean_value == 6);
  CHECK(b.value_se == 0);

  const MonteCarloEstimate c = monte_carlo(MechanismKind::randomized, Instance{10, {{0, 5, 3}}}, 100, 1);
  CHECK(c.frequency == std::vector<double>{1});
  CHECK(c.value_se == 0);

  CHECK_THROWS(monte_carlo(MechanismKind::randomized, d2(), 0, 1));
}
