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

#include <cstdint>
#include <random>

#include "pruneprice/scalar.hpp"

namespace pruneprice {

// Everything here is built on std::mt19937_64 and std::seed_seq, whose
// output sequences are fixed by the standard; the std distributions are not,
// so sampling helpers below consume raw 64-bit words only.

using Engine = std::mt19937_64;

Engine make_engine(std::uint64_t seed);

/// Counter-based split: the seed for stream `index` of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform integer in [0, bound) by rejection. bound must be positive.
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound);

/// The exact rational bits / 2^64, which lies in [0, 1).
Scalar unit_fraction(std::uint64_t bits);

}  // namespace pruneprice
