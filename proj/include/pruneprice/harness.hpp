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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pruneprice/audit.hpp"
#include "pruneprice/knapsack.hpp"
#include "pruneprice/mechanisms.hpp"
#include "pruneprice/model.hpp"

namespace pruneprice {

enum class ReportFormat { csv, json };

struct BenchConfig {
  std::vector<std::string> instance_files;
  std::optional<SuiteSpec> generator;
  std::vector<MechanismKind> kinds;
  /// Monte-Carlo realizations per randomized row; columns appear when > 1.
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;  // empty: standard output
  ReportFormat format = ReportFormat::csv;
  int decimal_digits = 0;  // 0: no decimal columns
  std::size_t oracle_limit = kDefaultOracleLimit;
};

/// Reads a JSON bench configuration:
///   {"instances": [paths] | "generator": {count, n_min, n_max, seed,
///    value_range: [lo, hi], cost_range: [lo, hi], budget, grids: [..]},
///    "kinds": [..], "trials": 1, "seed": 0, "output": "", "format": "csv",
///    "decimal": 0}
/// Relative instance paths resolve against `base_dir`.
BenchConfig parse_bench_config(std::string_view text, const std::string& base_dir = "");

/// Throws ValidationError when trials == 0 or no kind is selected.
void validate(const BenchConfig& config);

struct ReportRow {
  std::string instance;
  std::size_t n = 0;
  MechanismKind kind = MechanismKind::deterministic;
  std::uint64_t seed = 0;
  Scalar fopt;
  std::optional<Scalar> opt;  // present iff n is within the oracle limit
  Scalar alg;                 // expected value for the randomized kind
  std::optional<Scalar> ratio_fopt;  // empty: alg == 0
  std::optional<Scalar> ratio_opt;
  Scalar budget_used;  // total payment of the realization at `seed`
  bool within_bound = false;
  std::optional<Scalar> mc_alg;
  std::optional<double> mc_se;
  std::string error;  // non-empty when the row could not be computed
};

struct KindSummary {
  MechanismKind kind = MechanismKind::deterministic;
  std::size_t rows = 0;
  std::size_t violations = 0;  // rows outside the proven bound or in error
  bool infinite = false;       // some row had alg == 0
  std::optional<Scalar> max_ratio_fopt;
};

struct BenchReport {
  std::vector<ReportRow> rows;
  std::vector<KindSummary> summary;

  bool all_within_bounds() const;
};

/// One row per (instance, kind), in instance order. File instances are
/// normalized first; per-instance errors become error rows.
BenchReport run_bench(const BenchConfig& config);

/// Row values render identically in both formats.
std::string render_csv(const BenchReport& report, int decimal_digits);
std::string render_json(const BenchReport& report, int decimal_digits);

std::string to_json(const AuditReport& report, const Instance& instance);
std::string to_json(const AllocationProbabilities& probabilities, const Instance& instance);

/// Reads PRUNEPRICE_ORACLE_LIMIT, falling back to the default cap.
std::size_t oracle_limit_from_env();

/// Command-line entry point: `args` excludes the program name. Returns 0 on
/// success, 1 when an audit or bound check fails, 2 on usage or input errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pruneprice
