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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pruneprice {

/// Exact rational used for every value, cost, budget, ratio and price.
///
/// gmpxx keeps results of arithmetic in canonical form; values built from
/// raw numerator/denominator pairs must go through `make_scalar` or
/// `parse_scalar`, which canonicalize.
using Scalar = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "0.125" or "-3.5"
/// into an exact rational. Throws ParseError on anything else.
Scalar parse_scalar(std::string_view text);

Scalar make_scalar(long numerator, long denominator = 1);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Scalar& x);

/// Rounded (half away from zero) decimal rendering with `digits` fractional
/// digits. Display only.
std::string to_decimal(const Scalar& x, int digits);

double to_double(const Scalar& x);

inline const Scalar& min_of(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// 2^-k as an exact rational.
Scalar inverse_power_of_two(unsigned k);

}  // namespace pruneprice
