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

#include <stdexcept>
#include <string>

namespace pruneprice {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance document or scalar literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant (value <= 0, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Every item was removed, or no item can participate.
class EmptyMarketError : public Error {
 public:
  using Error::Error;
};

/// The exact knapsack oracle refuses instances above its size limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// The randomized price distribution needs a nonempty T.
class DegenerateSupportError : public Error {
 public:
  using Error::Error;
};

}  // namespace pruneprice
