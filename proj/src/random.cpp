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

#include "pruneprice/random.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace pruneprice {

namespace {

std::uint32_t low32(std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); }
std::uint32_t high32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{low32(seed), high32(seed)};
  return Engine(seq);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{low32(master), high32(master), low32(index), high32(index), 0x5eedu};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t x = engine();
  while (x > limit) x = engine();
  return x % bound;
}

Scalar unit_fraction(std::uint64_t bits) {
  mpz_class num(static_cast<unsigned long>(high32(bits)));
  num <<= 32;
  num += static_cast<unsigned long>(low32(bits));
  mpz_class den(1);
  den <<= 64;
  Scalar u(num, den);
  u.canonicalize();
  return u;
}

}  // namespace pruneprice
