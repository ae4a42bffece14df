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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pruneprice/scalar.hpp"

namespace pruneprice {

/// Stable label of an item. Normalization keeps the labels of surviving
/// items, so inside the library items are addressed by their position in
/// `Instance::items` and the label is only used for reporting.
using ItemId = std::size_t;

struct Item {
  ItemId id = 0;
  Scalar value;  // public value, > 0
  Scalar cost;   // true private cost, >= 0

  bool operator==(const Item&) const = default;
};

struct Instance {
  Scalar budget;
  std::vector<Item> items;

  std::size_t size() const { return items.size(); }
  std::vector<Scalar> values() const;
  std::vector<Scalar> costs() const;
  /// Position of the item labelled `id`; throws ValidationError if absent.
  std::size_t index_of(ItemId id) const;

  bool operator==(const Instance&) const = default;
};

/// Reported costs, one per item position of the associated instance.
struct BidProfile {
  std::vector<Scalar> bids;

  std::size_t size() const { return bids.size(); }
  const Scalar& operator[](std::size_t i) const { return bids[i]; }
  /// Copy with bid `i` replaced.
  BidProfile with_bid(std::size_t i, Scalar bid) const;

  bool operator==(const BidProfile&) const = default;
};

BidProfile truthful_bids(const Instance& instance);

/// Result of one mechanism run. Item references are positions.
struct Outcome {
  struct Offer {
    std::size_t item = 0;
    Scalar price;
    bool accepted = false;
  };

  std::vector<std::size_t> winners;  // ascending
  std::vector<Scalar> payments;      // aligned with winners
  std::vector<Offer> offers;         // posted prices in the order they were made
  Scalar value;

  bool wins(std::size_t item) const;
  /// Zero for losers.
  Scalar payment(std::size_t item) const;
  Scalar total_payment() const;
  /// Adds a winner keeping `winners` sorted.
  void award(std::size_t item, const Scalar& price, const Scalar& item_value);
};

/// An instance file may carry a bid profile next to the true costs.
struct Document {
  Instance instance;
  std::optional<BidProfile> bids;
};

Document parse_document(std::string_view text);
Instance parse_instance(std::string_view text);
std::string serialize(const Instance& instance, const BidProfile* bids = nullptr);

/// Checks budget > 0, at least one item, values > 0, costs >= 0.
void validate(const Instance& instance);
void validate(const Instance& instance, const BidProfile& bids);

/// Drops items whose true cost exceeds the budget. Throws EmptyMarketError
/// when nothing survives.
Instance normalize(const Instance& instance);

/// Restricts a bid profile of `from` to the items (matched by id) of `to`.
BidProfile restrict_bids(const Instance& from, const BidProfile& bids, const Instance& to);

struct RandomSpec {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::pair<Scalar, Scalar> value_range{1, 10};
  std::pair<Scalar, Scalar> cost_range{0, 1};
  Scalar budget = 1;
  /// Draws land on lo + (hi - lo) * k / grid for k in [0, grid].
  std::uint64_t grid = 1000;
};

Instance gen_random(const RandomSpec& spec);

struct LowerBoundInstance {
  Instance instance;
  BidProfile bids;       // equal to the true costs
  Scalar critical_cost;  // B / (2 - epsilon / 2)
};

/// Three unit-value items with costs (0, c, c), c = B / (2 - epsilon / 2),
/// for 0 < epsilon < 2.
LowerBoundInstance gen_lower_bound(const Scalar& epsilon, const Scalar& budget);

/// A reproducible family of random instances. Instance k uses seed
/// derive_seed(seed, k), a size drawn from [n_min, n_max] and a grid picked
/// from `grids`.
struct SuiteSpec {
  std::size_t count = 100;
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  std::uint64_t seed = 0;
  std::pair<Scalar, Scalar> value_range{1, 10};
  std::pair<Scalar, Scalar> cost_range{0, 1};
  Scalar budget = 1;
  std::vector<std::uint64_t> grids{1000};
};

std::vector<Instance> gen_suite(const SuiteSpec& spec);

}  // namespace pruneprice
