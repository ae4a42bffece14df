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
#include <numeric>

#include "oracles.hpp"
#include "pruneprice/errors.hpp"
#include "pruneprice/knapsack.hpp"
#include "pruneprice/model.hpp"

using namespace pruneprice;

namespace {

Scalar q(long n, long d = 1) { return make_scalar(n, d); }

Instance d1() {
  return Instance{4, {{0, 6, 2}, {1, 4, 2}, {2, 2, 2}}};
}

}  // namespace

TEST_CASE("fractional optimum on small instances") {
  const FractionalSolution a = fractional_opt(d1());
  CHECK(a.fopt == 10);
  CHECK(a.allocation == std::vector<Scalar>{1, 1, 0});

  const FractionalSolution single = fractional_opt(Instance{10, {{0, 5, 3}}});
  CHECK(single.fopt == 5);
  CHECK(single.allocation == std::vector<Scalar>{1});

  const auto lb = gen_lower_bound(q(1, 100), 1);
  const FractionalSolution b = fractional_opt(lb.instance);
  CHECK(b.fopt == q(599, 200));
  CHECK(b.allocation == std::vector<Scalar>{1, 1, q(199, 200)});
}

TEST_CASE("ratio order puts zero costs first and breaks ties by position") {
  const std::vector<Scalar> v{1, 2, 3, 4, 2};
  const std::vector<Scalar> c{1, 0, 3, 2, 0};
  CHECK(ratio_order(v, c) == std::vector<std::size_t>{1, 4, 3, 0, 2});
}

TEST_CASE("integral optimum on small instances") {
  const IntegralSolution a = integral_opt(d1());
  CHECK(a.opt == 10);
  CHECK(a.chosen == std::vector<std::size_t>{0, 1});

  const auto lb = gen_lower_bound(q(1, 100), 1);
  const IntegralSolution b = integral_opt(lb.instance);
  CHECK(b.opt == 2);
  CHECK(b.chosen == std::vector<std::size_t>{0, 1});

  const IntegralSolution single = integral_opt(Instance{10, {{0, 5, 3}}});
  CHECK(single.opt == 5);
  CHECK(single.chosen == std::vector<std::size_t>{0});
}

TEST_CASE("integral optimum refuses instances above the size limit") {
  Instance big{1, {}};
  for (std::size_t i = 0; i < 31; ++i) big.items.push_back({i, 1, q(1, 31)});
  CHECK_THROWS_AS(integral_opt(big), SizeLimitError);
  CHECK(integral_opt(big, 31).opt == 31);
  CHECK_THROWS_AS(integral_opt(d1(), 2), SizeLimitError);
}

TEST_CASE("knapsack solvers agree with enumeration") {
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    oracle::Draw draw(seed);
    const std::uint64_t grid = std::vector<std::uint64_t>{2, 4, 10, 1000}[seed % 4];
    const Instance inst = draw.instance(1 + draw.below(10), grid);
    const auto v = inst.values();
    const auto c = inst.costs();
    CAPTURE(serialize(inst));

    const FractionalSolution frac = fractional_opt(inst);
    CHECK(frac.fopt == oracle::fractional_vertex_opt(v, c, inst.budget));

    const IntegralSolution exact = integral_opt(inst);
    const oracle::SubsetOptimum brute = oracle::best_subset(v, c, inst.budget);
    CHECK(exact.opt == brute.opt);
    CHECK(exact.chosen == brute.chosen);
  }
}

TEST_CASE("fractional solution structure") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    oracle::Draw draw(seed + 10'000);
    const Instance inst = draw.instance(1 + draw.below(12), seed % 2 ? 10 : 1000);
    const FractionalSolution frac = fractional_opt(inst);
    const IntegralSolution exact = integral_opt(inst);

    Scalar spend = 0, value = 0;
    int fractional = 0;
    std::vector<std::size_t> whole;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const Scalar& x = frac.allocation[i];
      CHECK(x >= 0);
      CHECK(x <= 1);
      spend += x * inst.items[i].cost;
      value += x * inst.items[i].value;
      if (x > 0 && x < 1) ++fractional;
      if (x == 1) whole.push_back(i);
    }
    CHECK(spend <= inst.budget);
    CHECK(value == frac.fopt);
    CHECK(fractional <= 1);

    Scalar whole_cost = 0;
    for (std::size_t i : whole) whole_cost += inst.items[i].cost;
    CHECK(whole_cost <= inst.budget);

    CHECK(exact.opt <= frac.fopt);
    CHECK(frac.fopt <= 2 * exact.opt);

    Scalar chosen_cost = 0, chosen_value = 0;
    for (std::size_t i : exact.chosen) {
      chosen_cost += inst.items[i].cost;
      chosen_value += inst.items[i].value;
    }
    CHECK(chosen_cost <= inst.budget);
    CHECK(chosen_value == exact.opt);
  }
}

TEST_CASE("fractional optimum ignores item order") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracle::Draw draw(seed + 20'000);
    const Instance inst = draw.instance(2 + draw.below(8), 4);
    Instance shuffled = inst;
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      std::swap(shuffled.items[i], shuffled.items[draw.below(i + 1)]);
    }
    CHECK(fractional_opt(shuffled).fopt == fractional_opt(inst).fopt);
    CHECK(integral_opt(shuffled).opt == integral_opt(inst).opt);
  }
}

TEST_CASE("ties in ratio resolve by position") {
  // Equal ratios, budget covers one and a half items.
  const Instance inst{3, {{0, 2, 2}, {1, 2, 2}, {2, 2, 2}}};
  const FractionalSolution frac = fractional_opt(inst);
  CHECK(frac.allocation == std::vector<Scalar>{1, q(1, 2), 0});
  CHECK(integral_opt(inst).chosen == std::vector<std::size_t>{0});
}
