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

#include "pruneprice/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pruneprice/errors.hpp"
#include "pruneprice/random.hpp"

namespace pruneprice {

using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  file << text;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string opt_string(const std::optional<Scalar>& x) { return x ? to_string(*x) : std::string(); }

std::string ratio_string(const std::optional<Scalar>& x) { return x ? to_string(*x) : std::string("inf"); }

Scalar scalar_from_json(const json& node, const char* what) {
  if (node.is_string()) return parse_scalar(node.get<std::string>());
  if (node.is_number_integer()) return parse_scalar(node.dump());
  throw ParseError(std::string(what) + ": expected a rational string");
}

std::pair<Scalar, Scalar> range_from_json(const json& node, const char* what) {
  if (!node.is_array() || node.size() != 2) throw ParseError(std::string(what) + ": expected [lo, hi]");
  return {scalar_from_json(node[0], what), scalar_from_json(node[1], what)};
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ValidationError("unknown report format \"" + name + "\"");
}

std::string list_ids(const Instance& instance, const std::vector<std::size_t>& positions) {
  std::string s = "[";
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(instance.items[positions[k]].id);
  }
  return s + "]";
}

json ids_json(const Instance& instance, const std::vector<std::size_t>& positions) {
  json arr = json::array();
  for (std::size_t i : positions) arr.push_back(instance.items[i].id);
  return arr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bench configuration

BenchConfig parse_bench_config(std::string_view text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed bench config: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("bench config must be a JSON object");

  BenchConfig config;
  if (root.contains("instances")) {
    for (const auto& path : root["instances"]) {
      std::filesystem::path p(path.get<std::string>());
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      config.instance_files.push_back(p.string());
    }
  }
  if (root.contains("generator")) {
    const auto& g = root["generator"];
    SuiteSpec spec;
    spec.count = g.value("count", spec.count);
    spec.n_min = g.value("n_min", spec.n_min);
    spec.n_max = g.value("n_max", spec.n_max);
    spec.seed = g.value("seed", spec.seed);
    if (g.contains("value_range")) spec.value_range = range_from_json(g["value_range"], "value_range");
    if (g.contains("cost_range")) spec.cost_range = range_from_json(g["cost_range"], "cost_range");
    if (g.contains("budget")) spec.budget = scalar_from_json(g["budget"], "budget");
    if (g.contains("grids")) spec.grids = g["grids"].get<std::vector<std::uint64_t>>();
    config.generator = spec;
  }
  if (root.contains("kinds")) {
    for (const auto& k : root["kinds"]) config.kinds.push_back(parse_mechanism(k.get<std::string>()));
  } else {
    config.kinds.assign(kAllMechanisms.begin(), kAllMechanisms.end());
  }
  config.trials = root.value("trials", config.trials);
  config.seed = root.value("seed", config.seed);
  config.output = root.value("output", config.output);
  config.format = parse_format(root.value("format", std::string("csv")));
  config.decimal_digits = root.value("decimal", config.decimal_digits);
  return config;
}

void validate(const BenchConfig& config) {
  if (config.trials == 0) throw ValidationError("bench: trials must be at least 1");
  if (config.kinds.empty()) throw ValidationError("bench: select at least one mechanism");
}

// ---------------------------------------------------------------------------
// Benchmark

bool BenchReport::all_within_bounds() const {
  return std::all_of(summary.begin(), summary.end(), [](const KindSummary& s) { return s.violations == 0; });
}

BenchReport run_bench(const BenchConfig& config) {
  validate(config);

  struct Entry {
    std::string name;
    std::optional<Instance> instance;
    std::string error;
  };
  std::vector<Entry> entries;
  for (const auto& path : config.instance_files) {
    Entry e{path, std::nullopt, {}};
    try {
      e.instance = normalize(parse_instance(read_file(path)));
    } catch (const Error& ex) {
      e.error = ex.what();
    }
    entries.push_back(std::move(e));
  }
  if (config.generator) {
    auto suite = gen_suite(*config.generator);
    for (std::size_t k = 0; k < suite.size(); ++k) {
      entries.push_back({"gen-" + std::to_string(k), std::move(suite[k]), {}});
    }
  }

  BenchReport report;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& entry = entries[k];
    const std::uint64_t seed = derive_seed(config.seed, k);

    std::optional<Scalar> fopt;
    std::optional<Scalar> opt;
    std::string shared_error = entry.error;
    if (entry.instance && shared_error.empty()) {
      try {
        fopt = fractional_opt(*entry.instance).fopt;
        if (entry.instance->size() <= config.oracle_limit) opt = integral_opt(*entry.instance, config.oracle_limit).opt;
      } catch (const Error& ex) {
        shared_error = ex.what();
      }
    }

    for (MechanismKind kind : config.kinds) {
      ReportRow row;
      row.instance = entry.name;
      row.kind = kind;
      row.seed = seed;
      row.fopt = 0;
      row.alg = 0;
      row.budget_used = 0;
      if (!shared_error.empty() || !entry.instance) {
        row.error = shared_error;
        report.rows.push_back(std::move(row));
        continue;
      }
      const Instance& inst = *entry.instance;
      row.n = inst.size();
      row.fopt = *fopt;
      row.opt = opt;
      try {
        const BidProfile bids = truthful_bids(inst);
        const Outcome outcome = run(kind, inst, bids, seed);
        row.budget_used = outcome.total_payment();
        if (kind == MechanismKind::randomized) {
          const auto values = inst.values();
          row.alg = acceptance_probabilities(prune(values, bids, inst.budget), bids, inst.budget).expected_value;
          if (config.trials > 1) {
            const MonteCarloEstimate mc = monte_carlo(kind, inst, config.trials, seed);
            row.mc_alg = mc.mean_value;
            row.mc_se = mc.value_se;
          }
        } else {
          row.alg = outcome.value;
        }
        if (row.alg != 0) {
          row.ratio_fopt = Scalar(row.fopt / row.alg);
          if (row.opt) row.ratio_opt = Scalar(*row.opt / row.alg);
        }
        row.within_bound = within_proven_bound(kind, row.fopt, row.alg);
      } catch (const Error& ex) {
        row.error = ex.what();
      }
      report.rows.push_back(std::move(row));
    }
  }

  for (MechanismKind kind : config.kinds) {
    KindSummary s;
    s.kind = kind;
    for (const auto& row : report.rows) {
      if (row.kind != kind) continue;
      ++s.rows;
      if (!row.error.empty() || !row.within_bound) ++s.violations;
      if (!row.error.empty()) continue;
      if (!row.ratio_fopt) {
        s.infinite = true;
      } else if (!s.max_ratio_fopt || *s.max_ratio_fopt < *row.ratio_fopt) {
        s.max_ratio_fopt = row.ratio_fopt;
      }
    }
    report.summary.push_back(std::move(s));
  }
  return report;
}

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

Fields row_fields(const ReportRow& row, int decimal_digits) {
  const bool ok = row.error.empty();
  Fields f{
      {"instance", row.instance},
      {"n", std::to_string(row.n)},
      {"kind", std::string(to_string(row.kind))},
      {"seed", std::to_string(row.seed)},
      {"fopt", ok ? to_string(row.fopt) : ""},
      {"opt", ok ? opt_string(row.opt) : ""},
      {"alg", ok ? to_string(row.alg) : ""},
      {"ratio_fopt", ok ? ratio_string(row.ratio_fopt) : ""},
      {"ratio_opt", ok && row.opt ? ratio_string(row.ratio_opt) : ""},
      {"budget_used", ok ? to_string(row.budget_used) : ""},
      {"bound", std::string(proven_bound_label(row.kind))},
      {"within_bound", ok && row.within_bound ? "true" : "false"},
      {"mc_alg", opt_string(row.mc_alg)},
      {"mc_se", row.mc_se ? format_double(*row.mc_se) : ""},
      {"error", row.error},
  };
  if (decimal_digits > 0) {
    f.emplace_back("alg_decimal", ok ? to_decimal(row.alg, decimal_digits) : "");
    f.emplace_back("ratio_fopt_decimal", ok && row.ratio_fopt ? to_decimal(*row.ratio_fopt, decimal_digits) : "");
  }
  return f;
}

Fields summary_fields(const KindSummary& s, int decimal_digits) {
  std::string max_ratio = s.infinite ? "inf" : opt_string(s.max_ratio_fopt);
  Fields f{
      {"kind", std::string(to_string(s.kind))},
      {"rows", std::to_string(s.rows)},
      {"max_ratio_fopt", max_ratio},
      {"bound", std::string(proven_bound_label(s.kind))},
      {"violations", std::to_string(s.violations)},
  };
  if (decimal_digits > 0) {
    f.emplace_back("max_ratio_fopt_decimal",
                   !s.infinite && s.max_ratio_fopt ? to_decimal(*s.max_ratio_fopt, decimal_digits) : "");
  }
  return f;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const Fields& fields, bool names) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) line += ',';
    line += csv_escape(names ? fields[k].first : fields[k].second);
  }
  return line + "\n";
}

}  // namespace

std::string render_csv(const BenchReport& report, int decimal_digits) {
  std::string out = csv_line(row_fields(ReportRow{}, decimal_digits), true);
  for (const auto& row : report.rows) out += csv_line(row_fields(row, decimal_digits), false);
  for (const auto& s : report.summary) {
    const Fields f = summary_fields(s, decimal_digits);
    std::string line = "# summary";
    for (const auto& [name, value] : f) line += "," + name + "=" + csv_escape(value);
    out += line + "\n";
  }
  return out;
}

std::string render_json(const BenchReport& report, int decimal_digits) {
  json root;
  root["rows"] = json::array();
  for (const auto& row : report.rows) {
    json node = json::object();
    for (const auto& [name, value] : row_fields(row, decimal_digits)) node[name] = value;
    root["rows"].push_back(std::move(node));
  }
  root["summary"] = json::array();
  for (const auto& s : report.summary) {
    json node = json::object();
    for (const auto& [name, value] : summary_fields(s, decimal_digits)) node[name] = value;
    root["summary"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

std::string to_json(const AuditReport& report, const Instance& instance) {
  json root;
  root["passed"] = report.passed;
  root["checked_points"] = report.checked_points;
  root["violations"] = json::array();
  for (const auto& v : report.violations) {
    json node;
    node["item"] = v.item ? json(instance.items.at(*v.item).id) : json(nullptr);
    node["check"] = v.check;
    node["witness"] = v.witness;
    root["violations"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

std::string to_json(const AllocationProbabilities& probabilities, const Instance& instance) {
  json root;
  json x = json::object();
  for (std::size_t i = 0; i < probabilities.x.size(); ++i) {
    x[std::to_string(instance.items.at(i).id)] = to_string(probabilities.x[i]);
  }
  root["x"] = std::move(x);
  root["expected_value"] = to_string(probabilities.expected_value);
  return root.dump(2) + "\n";
}

std::size_t oracle_limit_from_env() {
  const char* raw = std::getenv("PRUNEPRICE_ORACLE_LIMIT");
  if (raw == nullptr || *raw == '\0') return kDefaultOracleLimit;
  std::string text(raw);
  if (!std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ValidationError("PRUNEPRICE_ORACLE_LIMIT must be a nonnegative integer");
  }
  return static_cast<std::size_t>(std::stoull(text));
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct LoadedMarket {
  Instance instance;  // normalized
  BidProfile bids;
};

BidProfile parse_bid_file(const std::string& path) {
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed bids file: ") + e.what());
  }
  const json& arr = root.is_object() && root.contains("bids") ? root["bids"] : root;
  if (!arr.is_array()) throw ParseError("bids file must hold an array of rational strings");
  BidProfile bids;
  for (const auto& b : arr) bids.bids.push_back(scalar_from_json(b, "bid"));
  return bids;
}

LoadedMarket load_market(const std::string& instance_path, const std::string& bids_path) {
  const Document doc = parse_document(read_file(instance_path));
  std::optional<BidProfile> bids = doc.bids;
  if (!bids_path.empty()) {
    bids = parse_bid_file(bids_path);
    validate(doc.instance, *bids);
  }
  LoadedMarket market;
  market.instance = normalize(doc.instance);
  market.bids = bids ? restrict_bids(doc.instance, *bids, market.instance) : truthful_bids(market.instance);
  return market;
}

std::vector<std::uint64_t> parse_seed_set(const std::string& text, std::uint64_t master) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) seeds.push_back(std::stoull(part));
  } else {
    const std::size_t count = std::stoull(text);
    for (std::size_t k = 0; k < count; ++k) seeds.push_back(derive_seed(master, k));
  }
  return seeds;
}

const std::vector<std::string> kMechanismNames{"first-warmup", "second-warmup", "deterministic", "randomized"};

int cmd_gen(bool lower_bound, std::size_t random_n, std::uint64_t seed, const std::string& budget_text,
            const std::string& epsilon_text, const RandomSpec& ranges, const std::string& output,
            std::ostream& out) {
  const Scalar budget = parse_scalar(budget_text);
  std::string text;
  if (lower_bound) {
    const LowerBoundInstance lb = gen_lower_bound(parse_scalar(epsilon_text), budget);
    text = serialize(lb.instance, &lb.bids);
  } else {
    RandomSpec spec = ranges;
    spec.n = random_n;
    spec.seed = seed;
    spec.budget = budget;
    text = serialize(gen_random(spec));
  }
  write_output(output, text + "\n", out);
  return 0;
}

int cmd_solve(const std::string& path, bool as_json, std::size_t limit, std::ostream& out) {
  const Instance inst = normalize(parse_instance(read_file(path)));
  const FractionalSolution frac = fractional_opt(inst);
  std::optional<IntegralSolution> integral;
  if (inst.size() <= limit) integral = integral_opt(inst, limit);

  if (as_json) {
    json root;
    root["fopt"] = to_string(frac.fopt);
    json alloc = json::object();
    for (std::size_t i = 0; i < inst.size(); ++i) alloc[std::to_string(inst.items[i].id)] = to_string(frac.allocation[i]);
    root["allocation"] = std::move(alloc);
    if (integral) {
      root["opt"] = to_string(integral->opt);
      root["chosen"] = ids_json(inst, integral->chosen);
    } else {
      root["opt"] = nullptr;
    }
    out << root.dump(2) << "\n";
    return 0;
  }
  out << "fopt = " << to_string(frac.fopt) << "\n";
  out << "allocation = [";
  for (std::size_t i = 0; i < inst.size(); ++i) out << (i ? ", " : "") << to_string(frac.allocation[i]);
  out << "]\n";
  if (integral) {
    out << "opt = " << to_string(integral->opt) << "\n";
    out << "chosen = " << list_ids(inst, integral->chosen) << "\n";
  } else {
    out << "opt = omitted (n = " << inst.size() << " exceeds oracle limit " << limit << ")\n";
  }
  return 0;
}

int cmd_prune(const std::string& path, const std::string& bids_path, bool as_json, std::ostream& out) {
  const LoadedMarket m = load_market(path, bids_path);
  const auto values = m.instance.values();
  const PruneResult p = prune(values, m.bids, m.instance.budget);
  const Scalar bound = fopt_bound(p, m.instance.budget, m.bids);
  if (as_json) {
    json root;
    root["r"] = to_string(p.r);
    root["kept"] = ids_json(m.instance, p.kept);
    root["star"] = m.instance.items[p.star].id;
    root["rest"] = ids_json(m.instance, p.rest);
    root["v_kept"] = to_string(p.v_kept);
    root["v_rest"] = to_string(p.v_rest);
    root["c_kept"] = to_string(p.c_kept_lower);
    root["fopt_bound"] = to_string(bound);
    out << root.dump(2) << "\n";
    return 0;
  }
  out << "r = " << to_string(p.r) << "\n";
  out << "kept = " << list_ids(m.instance, p.kept) << "\n";
  out << "star = " << m.instance.items[p.star].id << "\n";
  out << "rest = " << list_ids(m.instance, p.rest) << "\n";
  out << "v_kept = " << to_string(p.v_kept) << "\n";
  out << "v_rest = " << to_string(p.v_rest) << "\n";
  out << "c_kept = " << to_string(p.c_kept_lower) << "\n";
  out << "fopt_bound = " << to_string(bound) << "\n";
  return 0;
}

int cmd_run(const std::string& mechanism, const std::string& path, const std::string& bids_path, std::uint64_t seed,
            bool as_json, std::ostream& out) {
  const MechanismKind kind = parse_mechanism(mechanism);
  const LoadedMarket m = load_market(path, bids_path);
  const Instance& inst = m.instance;
  const Outcome o = run(kind, inst, m.bids, seed);
  const Scalar fopt = fractional_opt(inst).fopt;
  std::optional<Scalar> ratio;
  if (o.value != 0) ratio = Scalar(fopt / o.value);

  std::optional<AllocationProbabilities> probs;
  if (kind == MechanismKind::randomized) {
    const auto values = inst.values();
    probs = acceptance_probabilities(prune(values, m.bids, inst.budget), m.bids, inst.budget);
  }

  if (as_json) {
    json root;
    root["mechanism"] = std::string(to_string(kind));
    root["seed"] = seed;
    root["winners"] = ids_json(inst, o.winners);
    json pay = json::object();
    for (std::size_t k = 0; k < o.winners.size(); ++k) pay[std::to_string(inst.items[o.winners[k]].id)] = to_string(o.payments[k]);
    root["payments"] = std::move(pay);
    root["alg"] = to_string(o.value);
    root["total_payment"] = to_string(o.total_payment());
    root["fopt"] = to_string(fopt);
    root["ratio_fopt"] = ratio_string(ratio);
    if (probs) {
      root["probabilities"] = json::parse(to_json(*probs, inst));
      root["expected_alg"] = to_string(probs->expected_value);
      std::optional<Scalar> er;
      if (probs->expected_value != 0) er = Scalar(fopt / probs->expected_value);
      root["ratio_fopt_expected"] = ratio_string(er);
    }
    out << root.dump(2) << "\n";
    return 0;
  }
  out << "mechanism = " << to_string(kind) << "\n";
  out << "winners = " << list_ids(inst, o.winners) << "\n";
  out << "payments = [";
  for (std::size_t k = 0; k < o.payments.size(); ++k) out << (k ? ", " : "") << to_string(o.payments[k]);
  out << "]\n";
  out << "alg = " << to_string(o.value) << "\n";
  out << "total_payment = " << to_string(o.total_payment()) << "\n";
  out << "fopt = " << to_string(fopt) << "\n";
  out << "ratio_fopt = " << ratio_string(ratio) << "\n";
  if (probs) {
    std::optional<Scalar> er;
    if (probs->expected_value != 0) er = Scalar(fopt / probs->expected_value);
    out << "expected_alg = " << to_string(probs->expected_value) << "\n";
    out << "ratio_fopt_expected = " << ratio_string(er) << "\n";
  }
  return 0;
}

int cmd_audit(const std::string& mechanism, const std::string& path, const std::string& agents_text,
              const std::string& seeds_text, std::uint64_t master, const std::vector<std::string>& deviation_texts,
              const std::string& output, std::ostream& out) {
  const MechanismKind kind = parse_mechanism(mechanism);
  const Instance inst = normalize(parse_instance(read_file(path)));
  const BidProfile truth = truthful_bids(inst);
  const std::vector<std::uint64_t> seeds = parse_seed_set(seeds_text, master);

  std::vector<std::size_t> agents;
  if (agents_text == "all") {
    for (std::size_t i = 0; i < inst.size(); ++i) agents.push_back(i);
  } else {
    std::stringstream ss(agents_text);
    std::string part;
    while (std::getline(ss, part, ',')) agents.push_back(inst.index_of(std::stoull(part)));
  }
  std::vector<Scalar> deviations;
  for (const auto& d : deviation_texts) deviations.push_back(parse_scalar(d));

  AuditReport report;
  for (std::size_t agent : agents) report.merge(audit_truthfulness(kind, inst, agent, deviations, seeds));
  const std::vector<std::uint64_t> realizations =
      kind == MechanismKind::randomized && !seeds.empty() ? seeds : std::vector<std::uint64_t>{seeds.empty() ? 0 : seeds[0]};
  for (std::uint64_t s : realizations) {
    const Outcome o = run(kind, inst, truth, s);
    report.merge(check_individual_rationality(o, truth));
    report.merge(check_budget_feasibility(o, inst.budget));
  }
  write_output(output, to_json(report, inst), out);
  return report.passed ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budget-feasible procurement mechanisms: generate, run, audit, benchmark", "pruneprice"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write an instance file");
  std::size_t gen_random_n = 0;
  bool gen_lower = false;
  std::uint64_t gen_seed = 0;
  std::string gen_budget = "1", gen_epsilon = "1/100", gen_output;
  std::string value_min = "1", value_max = "10", cost_min = "0", cost_max = "1";
  std::uint64_t gen_grid = 1000;
  auto* random_opt = gen->add_option("--random", gen_random_n, "Random instance with this many items");
  auto* lower_opt = gen->add_flag("--lower-bound", gen_lower, "Three-item tight instance for deterministic mechanisms");
  random_opt->excludes(lower_opt);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--budget", gen_budget, "Budget (rational)");
  gen->add_option("--epsilon", gen_epsilon, "Gap parameter in (0, 2) for --lower-bound");
  gen->add_option("--value-min", value_min);
  gen->add_option("--value-max", value_max);
  gen->add_option("--cost-min", cost_min);
  gen->add_option("--cost-max", cost_max);
  gen->add_option("--grid", gen_grid, "Grid resolution of random draws");
  gen->add_option("-o,--output", gen_output, "Output path (default: stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Print the fractional and exact knapsack optima");
  std::string solve_instance;
  bool solve_json = false;
  solve->add_option("--instance", solve_instance)->required();
  solve->add_flag("--json", solve_json);

  // prune
  auto* prune_cmd = app.add_subcommand("prune", "Print the pruning stage result");
  std::string prune_instance, prune_bids;
  bool prune_json = false;
  prune_cmd->add_option("--instance", prune_instance)->required();
  prune_cmd->add_option("--bids", prune_bids, "JSON array of bids (default: bundled bids or true costs)");
  prune_cmd->add_flag("--json", prune_json);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one mechanism");
  std::string run_mechanism, run_instance, run_bids;
  std::uint64_t run_seed = 0;
  bool run_json = false;
  run_cmd->add_option("--mechanism", run_mechanism)->required()->check(CLI::IsMember(kMechanismNames));
  run_cmd->add_option("--instance", run_instance)->required();
  run_cmd->add_option("--seed", run_seed);
  run_cmd->add_option("--bids", run_bids, "JSON array of bids (default: bundled bids or true costs)");
  run_cmd->add_flag("--json", run_json);

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "Truthfulness, rationality and budget audit");
  std::string audit_mechanism, audit_instance, audit_agents = "all", audit_seeds = "16", audit_output;
  std::uint64_t audit_seed = 0;
  std::vector<std::string> audit_deviations;
  audit_cmd->add_option("--mechanism", audit_mechanism)->required()->check(CLI::IsMember(kMechanismNames));
  audit_cmd->add_option("--instance", audit_instance)->required();
  audit_cmd->add_option("--agents", audit_agents, "\"all\" or comma-separated item ids");
  audit_cmd->add_option("--seeds", audit_seeds, "Realization count, or comma-separated explicit seeds");
  audit_cmd->add_option("--seed", audit_seed, "Master seed for derived realizations");
  audit_cmd->add_option("--deviation", audit_deviations, "Extra deviation bids");
  audit_cmd->add_option("-o,--output", audit_output);

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark approximation ratios");
  std::string bench_config_path, bench_output, bench_format = "csv";
  std::vector<std::string> bench_instances, bench_kinds;
  std::size_t bench_count = 0, bench_n_min = 1, bench_n_max = 10, bench_trials = 1;
  std::uint64_t bench_seed = 0;
  std::vector<std::uint64_t> bench_grids{1000};
  std::string bench_budget = "1", bv_min = "1", bv_max = "10", bc_min = "0", bc_max = "1";
  int bench_decimal = 0;
  auto* config_opt = bench->add_option("--config", bench_config_path, "JSON bench configuration");
  bench->add_option("--instance", bench_instances, "Instance files");
  bench->add_option("--count", bench_count, "Number of generated instances");
  bench->add_option("--n-min", bench_n_min);
  bench->add_option("--n-max", bench_n_max);
  bench->add_option("--budget", bench_budget);
  bench->add_option("--value-min", bv_min);
  bench->add_option("--value-max", bv_max);
  bench->add_option("--cost-min", bc_min);
  bench->add_option("--cost-max", bc_max);
  bench->add_option("--grid", bench_grids);
  bench->add_option("--kinds", bench_kinds)->check(CLI::IsMember(kMechanismNames))->delimiter(',');
  bench->add_option("--trials", bench_trials, "Monte-Carlo realizations for randomized rows");
  bench->add_option("--seed", bench_seed);
  auto* bench_output_opt = bench->add_option("-o,--output", bench_output);
  auto* bench_format_opt = bench->add_option("--format", bench_format)->check(CLI::IsMember({"csv", "json"}));
  auto* bench_decimal_opt = bench->add_option("--decimal", bench_decimal, "Add k-digit decimal columns");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      if (!*random_opt && !gen_lower) {
        err << "gen: pass --random N or --lower-bound\n" << gen->help();
        return 2;
      }
      RandomSpec ranges;
      ranges.value_range = {parse_scalar(value_min), parse_scalar(value_max)};
      ranges.cost_range = {parse_scalar(cost_min), parse_scalar(cost_max)};
      ranges.grid = gen_grid;
      return cmd_gen(gen_lower, gen_random_n, gen_seed, gen_budget, gen_epsilon, ranges, gen_output, out);
    }
    if (*solve) return cmd_solve(solve_instance, solve_json, oracle_limit_from_env(), out);
    if (*prune_cmd) return cmd_prune(prune_instance, prune_bids, prune_json, out);
    if (*run_cmd) return cmd_run(run_mechanism, run_instance, run_bids, run_seed, run_json, out);
    if (*audit_cmd) {
      return cmd_audit(audit_mechanism, audit_instance, audit_agents, audit_seeds, audit_seed, audit_deviations,
                       audit_output, out);
    }
    if (*bench) {
      BenchConfig config;
      if (*config_opt) {
        const std::filesystem::path cfg(bench_config_path);
        config = parse_bench_config(read_file(bench_config_path), cfg.parent_path().string());
      } else {
        config.instance_files = bench_instances;
        if (bench_count > 0) {
          SuiteSpec spec;
          spec.count = bench_count;
          spec.n_min = bench_n_min;
          spec.n_max = bench_n_max;
          spec.seed = bench_seed;
          spec.budget = parse_scalar(bench_budget);
          spec.value_range = {parse_scalar(bv_min), parse_scalar(bv_max)};
          spec.cost_range = {parse_scalar(bc_min), parse_scalar(bc_max)};
          spec.grids = bench_grids;
          config.generator = spec;
        }
        if (bench_kinds.empty()) {
          config.kinds.assign(kAllMechanisms.begin(), kAllMechanisms.end());
        } else {
          for (const auto& k : bench_kinds) config.kinds.push_back(parse_mechanism(k));
        }
        config.trials = bench_trials;
        config.seed = bench_seed;
      }
      if (*bench_output_opt) config.output = bench_output;
      if (*bench_format_opt || !*config_opt) config.format = parse_format(bench_format);
      if (*bench_decimal_opt || !*config_opt) config.decimal_digits = bench_decimal;
      config.oracle_limit = oracle_limit_from_env();

      const BenchReport report = run_bench(config);
      const std::string text = config.format == ReportFormat::csv ? render_csv(report, config.decimal_digits)
                                                                  : render_json(report, config.decimal_digits);
      write_output(config.output, text, out);
      return report.all_within_bounds() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid number: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pruneprice
