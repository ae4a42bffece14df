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

#include "pruneprice/scalar.hpp"

#include <cctype>

#include "pruneprice/errors.hpp"

namespace pruneprice {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw ParseError("not a rational literal: \"" + std::string(text) + "\"");
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Scalar result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    result = Scalar(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_literal(text);
    if (!whole.empty() && !all_digits(whole)) bad_literal(text);
    if (!frac.empty() && !all_digits(frac)) bad_literal(text);
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Scalar(mpz_class(digits.empty() ? std::string("0") : digits, 10), scale);
    result.canonicalize();
  } else {
    if (!all_digits(body)) bad_literal(text);
    result = Scalar(mpz_class(std::string(body), 10));
  }
  return negative ? Scalar(-result) : result;
}

Scalar make_scalar(long numerator, long denominator) {
  if (denominator == 0) throw ValidationError("zero denominator");
  Scalar x(numerator, denominator);
  x.canonicalize();
  return x;
}

std::string to_string(const Scalar& x) { return x.get_str(10); }

std::string to_decimal(const Scalar& x, int digits) {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = x < 0;
  Scalar magnitude = negative ? Scalar(-x) : x;
  Scalar scaled = magnitude * scale + Scalar(1, 2);
  mpz_class rounded = scaled.get_num() / scaled.get_den();

  std::string s = rounded.get_str(10);
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && rounded != 0) s.insert(0, "-");
  return s;
}

double to_double(const Scalar& x) { return x.get_d(); }

Scalar inverse_power_of_two(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Scalar(mpz_class(1), den);
}

}  // namespace pruneprice
