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

#include "pruneprice/mechanisms.hpp"

#include <string>

#include "pruneprice/errors.hpp"
#include "pruneprice/random.hpp"

namespace pruneprice {

std::string_view to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::first_warmup: return "first-warmup";
    case MechanismKind::second_warmup: return "second-warmup";
    case MechanismKind::deterministic: return "deterministic";
    case MechanismKind::randomized: return "randomized";
  }
  return "unknown";
}

MechanismKind parse_mechanism(std::string_view name) {
  for (MechanismKind kind : kAllMechanisms) {
    if (to_string(kind) == name) return kind;
  }
  throw ValidationError("unknown mechanism \"" + std::string(name) + "\"");
}

namespace {

// Take-it-or-leave-it offer; acceptance at equality.
bool post(Outcome& out, const PruneResult& p, const BidProfile& bids, std::size_t item, const Scalar& price) {
  const bool accepted = bids[item] <= price;
  out.offers.push_back({item, price, accepted});
  if (accepted) out.award(item, price, p.values[item]);
  return accepted;
}

Outcome empty_outcome() {
  Outcome out;
  out.value = 0;
  return out;
}

void post_star_at_cap(Outcome& out, const PruneResult& p, const BidProfile& bids) {
  post(out, p, bids, p.star, Scalar(p.v_star() / p.r));
}

void post_rest_at_cap(Outcome& out, const PruneResult& p, const BidProfile& bids) {
  for (std::size_t i : p.rest) post(out, p, bids, i, Scalar(p.values[i] / p.r));
}

}  // namespace

Outcome run_first_warmup(const PruneResult& p, const BidProfile& bids, const Scalar&) {
  Outcome out = empty_outcome();
  if (p.v_star() >= p.v_rest) {
    post_star_at_cap(out, p, bids);
  } else {
    post_rest_at_cap(out, p, bids);
  }
  return out;
}

Outcome run_second_warmup(const PruneResult& p, const BidProfile& bids, const Scalar& budget) {
  Outcome out = empty_outcome();
  // v* >= sqrt(2) v(T), both sides nonnegative
  if (p.v_star() * p.v_star() >= 2 * p.v_rest * p.v_rest) {
    post_star_at_cap(out, p, bids);
  } else {
    post_rest_at_cap(out, p, bids);
    post(out, p, bids, p.star, Scalar(budget - p.v_rest / p.r));
  }
  return out;
}

Outcome run_deterministic(const PruneResult& p, const BidProfile& bids, const Scalar& budget) {
  Outcome out = empty_outcome();
  const Scalar& v_star = p.v_star();
  if (2 * v_star <= p.v_rest) {
    post_rest_at_cap(out, p, bids);
  } else if (v_star >= 2 * p.v_rest) {
    post_star_at_cap(out, p, bids);
  } else {
    const Scalar star_offer = min_of(Scalar(v_star / p.r), Scalar((2 * v_star - p.v_rest) * budget / p.v_kept));
    if (post(out, p, bids, p.star, star_offer)) {
      const Scalar left = budget - star_offer;
      for (std::size_t i : p.rest) {
        post(out, p, bids, i, min_of(Scalar(p.values[i] / p.r), Scalar(p.values[i] / p.v_rest * left)));
      }
    } else {
      post_rest_at_cap(out, p, bids);
    }
  }
  return out;
}

PriceDistribution randomized_distribution(const PruneResult& p, const Scalar& budget) {
  if (p.rest.empty()) throw DegenerateSupportError("randomized price distribution needs a nonempty T");
  const Scalar& v_star = p.v_star();
  PriceDistribution d;
  d.q = (p.v_kept - p.r * budget) / (2 * min_of(v_star, p.v_rest));
  const Scalar half(1, 2);
  if (v_star <= p.v_rest) {
    d.q_star = half - d.q;
    d.q_rest = half;
  } else {
    d.q_star = half;
    d.q_rest = half - d.q;
  }
  d.lo = budget - p.v_rest / p.r;
  d.hi = v_star / p.r;
  return d;
}

PriceDraw draw_price(const PriceDistribution& dist, std::uint64_t seed) {
  Engine engine = make_engine(seed);
  const Scalar branch = unit_fraction(engine());
  PriceDraw draw;
  draw.fraction = unit_fraction(engine());
  if (branch < dist.q_star) {
    draw.branch = PriceBranch::star;
  } else if (branch < dist.q_star + dist.q_rest) {
    draw.branch = PriceBranch::rest;
  } else {
    draw.branch = PriceBranch::uniform;
  }
  return draw;
}

Scalar star_price(const PriceDistribution& dist, const PriceDraw& draw) {
  switch (draw.branch) {
    case PriceBranch::star: return dist.hi;
    case PriceBranch::rest: return dist.lo;
    case PriceBranch::uniform: return dist.lo + draw.fraction * (dist.hi - dist.lo);
  }
  return dist.hi;
}

Outcome run_randomized_at(const PruneResult& p, const BidProfile& bids, const Scalar& budget,
                          const PriceDraw& draw) {
  Outcome out = empty_outcome();
  if (p.rest.empty()) {
    post_star_at_cap(out, p, bids);
    return out;
  }
  const PriceDistribution dist = randomized_distribution(p, budget);
  const Scalar star_offer = star_price(dist, draw);
  post(out, p, bids, p.star, star_offer);
  const Scalar left = budget - star_offer;
  for (std::size_t i : p.rest) post(out, p, bids, i, Scalar(p.values[i] / p.v_rest * left));
  return out;
}

Outcome run_randomized(const PruneResult& p, const BidProfile& bids, const Scalar& budget, std::uint64_t seed) {
  if (p.rest.empty()) return run_randomized_at(p, bids, budget, PriceDraw{});
  return run_randomized_at(p, bids, budget, draw_price(randomized_distribution(p, budget), seed));
}

Outcome run_second_stage(MechanismKind kind, const PruneResult& p, const BidProfile& bids,
                         const Scalar& budget, std::uint64_t seed) {
  switch (kind) {
    case MechanismKind::first_warmup: return run_first_warmup(p, bids, budget);
    case MechanismKind::second_warmup: return run_second_warmup(p, bids, budget);
    case MechanismKind::deterministic: return run_deterministic(p, bids, budget);
    case MechanismKind::randomized: return run_randomized(p, bids, budget, seed);
  }
  throw ValidationError("unknown mechanism kind");
}

Outcome apply_payment_cap(Outcome outcome, const PruneResult& p) {
  for (std::size_t k = 0; k < outcome.winners.size(); ++k) {
    const std::size_t i = outcome.winners[k];
    outcome.payments[k] = cap_payment(outcome.payments[k], p.values[i], p.r);
  }
  return outcome;
}

Outcome run_pruned(MechanismKind kind, const PruneResult& p, const BidProfile& bids, const Scalar& budget,
                   std::uint64_t seed) {
  return apply_payment_cap(run_second_stage(kind, p, bids, budget, seed), p);
}

Outcome run(MechanismKind kind, const Instance& instance, const BidProfile& bids, std::uint64_t seed) {
  validate(instance, bids);
  bool anyone = false;
  for (const auto& b : bids.bids) anyone = anyone || b <= instance.budget;
  if (!anyone) return empty_outcome();
  const auto values = instance.values();
  const PruneResult p = prune(values, bids, instance.budget);
  return run_pruned(kind, p, bids, instance.budget, seed);
}

}  // namespace pruneprice
