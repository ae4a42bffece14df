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

#include "pruneprice/model.hpp"

#include <algorithm>
#include <json.hpp>

#include "pruneprice/errors.hpp"
#include "pruneprice/random.hpp"

namespace pruneprice {

using json = nlohmann::json;

std::vector<Scalar> Instance::values() const {
  std::vector<Scalar> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.value);
  return out;
}

std::vector<Scalar> Instance::costs() const {
  std::vector<Scalar> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.cost);
  return out;
}

std::size_t Instance::index_of(ItemId id) const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  throw ValidationError("no item with id " + std::to_string(id));
}

BidProfile BidProfile::with_bid(std::size_t i, Scalar bid) const {
  BidProfile copy = *this;
  copy.bids.at(i) = std::move(bid);
  return copy;
}

BidProfile truthful_bids(const Instance& instance) { return BidProfile{instance.costs()}; }

bool Outcome::wins(std::size_t item) const {
  return std::binary_search(winners.begin(), winners.end(), item);
}

Scalar Outcome::payment(std::size_t item) const {
  auto it = std::lower_bound(winners.begin(), winners.end(), item);
  if (it == winners.end() || *it != item) return Scalar(0);
  return payments[static_cast<std::size_t>(it - winners.begin())];
}

Scalar Outcome::total_payment() const {
  Scalar total = 0;
  for (const auto& p : payments) total += p;
  return total;
}

void Outcome::award(std::size_t item, const Scalar& price, const Scalar& item_value) {
  auto it = std::lower_bound(winners.begin(), winners.end(), item);
  auto offset = it - winners.begin();
  winners.insert(it, item);
  payments.insert(payments.begin() + offset, price);
  value += item_value;
}

// ---------------------------------------------------------------------------
// JSON instance format

namespace {

Scalar scalar_field(const json& node, const char* what) {
  if (node.is_string()) return parse_scalar(node.get<std::string>());
  if (node.is_number_integer()) {
    return parse_scalar(node.dump());
  }
  if (node.is_number_float()) {
    throw ParseError(std::string(what) + ": floating-point numbers are not exact; use a string such as \"1/3\" or \"0.25\"");
  }
  throw ParseError(std::string(what) + ": expected a rational string");
}

}  // namespace

Document parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("instance document must be a JSON object");
  if (!root.contains("budget")) throw ParseError("missing \"budget\"");
  if (!root.contains("items") || !root["items"].is_array()) throw ParseError("missing \"items\" array");

  Document doc;
  doc.instance.budget = scalar_field(root["budget"], "budget");
  const auto& items = root["items"];
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& node = items[i];
    if (!node.is_object() || !node.contains("value") || !node.contains("cost")) {
      throw ParseError("item " + std::to_string(i) + ": expected {\"value\", \"cost\"}");
    }
    Item item;
    item.id = i;
    if (node.contains("id")) {
      if (!node["id"].is_number_unsigned()) throw ParseError("item " + std::to_string(i) + ": id must be a nonnegative integer");
      item.id = node["id"].get<std::size_t>();
    }
    item.value = scalar_field(node["value"], "value");
    item.cost = scalar_field(node["cost"], "cost");
    doc.instance.items.push_back(std::move(item));
  }
  validate(doc.instance);

  if (root.contains("bids")) {
    const auto& bids = root["bids"];
    if (!bids.is_array()) throw ParseError("\"bids\" must be an array");
    BidProfile profile;
    for (const auto& b : bids) profile.bids.push_back(scalar_field(b, "bid"));
    validate(doc.instance, profile);
    doc.bids = std::move(profile);
  }
  return doc;
}

Instance parse_instance(std::string_view text) { return parse_document(text).instance; }

std::string serialize(const Instance& instance, const BidProfile* bids) {
  json root;
  root["budget"] = to_string(instance.budget);
  json items = json::array();
  bool contiguous = true;
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    if (instance.items[i].id != i) contiguous = false;
  }
  for (const auto& item : instance.items) {
    json node;
    if (!contiguous) node["id"] = item.id;
    node["value"] = to_string(item.value);
    node["cost"] = to_string(item.cost);
    items.push_back(std::move(node));
  }
  root["items"] = std::move(items);
  if (bids != nullptr) {
    json arr = json::array();
    for (const auto& b : bids->bids) arr.push_back(to_string(b));
    root["bids"] = std::move(arr);
  }
  return root.dump();
}

void validate(const Instance& instance) {
  if (instance.budget <= 0) throw ValidationError("budget must be positive");
  if (instance.items.empty()) throw ValidationError("instance has no items");
  for (const auto& item : instance.items) {
    if (item.value <= 0) {
      throw ValidationError("item " + std::to_string(item.id) + ": nonpositive value " + to_string(item.value));
    }
    if (item.cost < 0) {
      throw ValidationError("item " + std::to_string(item.id) + ": negative cost " + to_string(item.cost));
    }
  }
}

void validate(const Instance& instance, const BidProfile& bids) {
  validate(instance);
  if (bids.size() != instance.size()) {
    throw ValidationError("bid profile has " + std::to_string(bids.size()) + " bids for " +
                          std::to_string(instance.size()) + " items");
  }
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i] < 0) throw ValidationError("negative bid for item " + std::to_string(instance.items[i].id));
  }
}

Instance normalize(const Instance& instance) {
  validate(instance);
  Instance out;
  out.budget = instance.budget;
  for (const auto& item : instance.items) {
    if (item.cost <= instance.budget) out.items.push_back(item);
  }
  if (out.items.empty()) throw EmptyMarketError("every item costs more than the budget");
  return out;
}

BidProfile restrict_bids(const Instance& from, const BidProfile& bids, const Instance& to) {
  if (bids.size() != from.size()) throw ValidationError("bid profile does not match the source instance");
  BidProfile out;
  out.bids.reserve(to.size());
  for (const auto& item : to.items) out.bids.push_back(bids[from.index_of(item.id)]);
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

void check_range(const std::pair<Scalar, Scalar>& range, const char* what) {
  if (range.second < range.first) throw ValidationError(std::string(what) + " range is empty");
}

Scalar draw_on_grid(Engine& engine, const std::pair<Scalar, Scalar>& range, std::uint64_t grid) {
  const std::uint64_t k = uniform_below(engine, grid + 1);
  Scalar step(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(grid)));
  step.canonicalize();
  return Scalar(range.first + (range.second - range.first) * step);
}

}  // namespace

Instance gen_random(const RandomSpec& spec) {
  if (spec.n == 0) throw ValidationError("gen_random: n must be at least 1");
  if (spec.grid == 0) throw ValidationError("gen_random: grid must be positive");
  if (spec.budget <= 0) throw ValidationError("gen_random: budget must be positive");
  check_range(spec.value_range, "value");
  check_range(spec.cost_range, "cost");
  if (spec.value_range.first <= 0) throw ValidationError("gen_random: values must be drawn above 0");
  if (spec.cost_range.first < 0) throw ValidationError("gen_random: costs must be nonnegative");

  Engine engine = make_engine(spec.seed);
  Instance out;
  out.budget = spec.budget;
  out.items.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    Item item;
    item.id = i;
    item.value = draw_on_grid(engine, spec.value_range, spec.grid);
    item.cost = min_of(draw_on_grid(engine, spec.cost_range, spec.grid), spec.budget);
    out.items.push_back(std::move(item));
  }
  return out;
}

LowerBoundInstance gen_lower_bound(const Scalar& epsilon, const Scalar& budget) {
  if (epsilon <= 0 || epsilon >= 2) throw ValidationError("gen_lower_bound: epsilon must lie in (0, 2)");
  if (budget <= 0) throw ValidationError("gen_lower_bound: budget must be positive");

  LowerBoundInstance out;
  out.critical_cost = budget / (Scalar(2) - epsilon / 2);
  out.instance.budget = budget;
  out.instance.items = {
      Item{0, Scalar(1), Scalar(0)},
      Item{1, Scalar(1), out.critical_cost},
      Item{2, Scalar(1), out.critical_cost},
  };
  out.bids = truthful_bids(out.instance);
  return out;
}

std::vector<Instance> gen_suite(const SuiteSpec& spec) {
  if (spec.n_min == 0 || spec.n_max < spec.n_min) throw ValidationError("gen_suite: need 1 <= n_min <= n_max");
  if (spec.grids.empty()) throw ValidationError("gen_suite: no grids");

  std::vector<Instance> out;
  out.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    const std::uint64_t seed = derive_seed(spec.seed, k);
    Engine shape = make_engine(derive_seed(seed, 0));
    RandomSpec one;
    one.n = spec.n_min + static_cast<std::size_t>(uniform_below(shape, spec.n_max - spec.n_min + 1));
    one.grid = spec.grids[static_cast<std::size_t>(uniform_below(shape, spec.grids.size()))];
    one.seed = seed;
    one.value_range = spec.value_range;
    one.cost_range = spec.cost_range;
    one.budget = spec.budget;
    out.push_back(gen_random(one));
  }
  return out;
}

}  // namespace pruneprice
