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

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pruneprice/audit.hpp"
#include "pruneprice/errors.hpp"
#include "pruneprice/harness.hpp"
#include "pruneprice/knapsack.hpp"
#include "pruneprice/mechanisms.hpp"
#include "pruneprice/model.hpp"
#include "pruneprice/pruning.hpp"

namespace py = pybind11;

// Scalars cross the boundary as fractions.Fraction. Anything whose str() is
// an exact literal (int, Fraction, "3/4", "0.25") is accepted on the way in.
namespace pybind11::detail {
template <>
struct type_caster<pruneprice::Scalar> {
  PYBIND11_TYPE_CASTER(pruneprice::Scalar, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || src.is_none() || PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    const py::module_ fractions = py::module_::import("fractions");
    if (!PyLong_Check(src.ptr()) && !py::isinstance(src, fractions.attr("Fraction")) &&
        !py::isinstance<py::str>(src)) {
      return false;
    }
    try {
      value = pruneprice::parse_scalar(py::str(src).cast<std::string>());
    } catch (const pruneprice::ParseError&) {
      return false;
    }
    return true;
  }

  static handle cast(const pruneprice::Scalar& x, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(pruneprice::to_string(x)).release();
  }
};
}  // namespace pybind11::detail

namespace {

using namespace pruneprice;

py::object opt_index(const std::optional<std::size_t>& i) { return i ? py::cast(*i) : py::none(); }

}  // namespace

PYBIND11_MODULE(_pruneprice, m) {
  m.doc() = "Exact budget-feasible posted-price mechanisms.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<EmptyMarketError>(m, "EmptyMarketError", base);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", base);
  py::register_exception<DegenerateSupportError>(m, "DegenerateSupportError", base);

  py::enum_<MechanismKind>(m, "Mechanism")
      .value("first_warmup", MechanismKind::first_warmup)
      .value("second_warmup", MechanismKind::second_warmup)
      .value("deterministic", MechanismKind::deterministic)
      .value("randomized", MechanismKind::randomized);

  py::class_<Item>(m, "Item")
      .def(py::init([](ItemId id, Scalar value, Scalar cost) { return Item{id, std::move(value), std::move(cost)}; }),
           py::arg("id"), py::arg("value"), py::arg("cost"))
      .def_readwrite("id", &Item::id)
      .def_readwrite("value", &Item::value)
      .def_readwrite("cost", &Item::cost)
      .def(py::self == py::self)
      .def("__repr__", [](const Item& it) {
        return "Item(id=" + std::to_string(it.id) + ", value=" + to_string(it.value) + ", cost=" + to_string(it.cost) +
               ")";
      });

  py::class_<Instance>(m, "Instance")
      .def(py::init([](Scalar budget, std::vector<Item> items) { return Instance{std::move(budget), std::move(items)}; }),
           py::arg("budget"), py::arg("items"))
      .def_readwrite("budget", &Instance::budget)
      .def_readwrite("items", &Instance::items)
      .def("__len__", &Instance::size)
      .def("values", &Instance::values)
      .def("costs", &Instance::costs)
      .def("index_of", &Instance::index_of)
      .def(py::self == py::self)
      .def("to_json", [](const Instance& inst) { return serialize(inst); })
      .def_static("from_json", [](const std::string& text) { return parse_instance(text); });

  m.def("parse_document", [](const std::string& text) {
    Document doc = parse_document(text);
    py::object bids = doc.bids ? py::cast(doc.bids->bids) : py::none();
    return py::make_tuple(doc.instance, bids);
  });
  m.def("serialize", [](const Instance& inst, std::optional<std::vector<Scalar>> bids) {
    if (!bids) return serialize(inst);
    const BidProfile profile{*bids};
    return serialize(inst, &profile);
  }, py::arg("instance"), py::arg("bids") = py::none());
  m.def("normalize", &normalize);
  m.def("truthful_bids", [](const Instance& inst) { return truthful_bids(inst).bids; });

  m.def("gen_random", [](std::size_t n, std::uint64_t seed, std::pair<Scalar, Scalar> value_range,
                         std::pair<Scalar, Scalar> cost_range, Scalar budget, std::uint64_t grid) {
    RandomSpec spec;
    spec.n = n;
    spec.seed = seed;
    spec.value_range = std::move(value_range);
    spec.cost_range = std::move(cost_range);
    spec.budget = std::move(budget);
    spec.grid = grid;
    return gen_random(spec);
  }, py::arg("n"), py::arg("seed") = 0, py::arg("value_range") = std::pair<Scalar, Scalar>{1, 10},
     py::arg("cost_range") = std::pair<Scalar, Scalar>{0, 1}, py::arg("budget") = Scalar(1),
     py::arg("grid") = 1000);
  m.def("gen_lower_bound", [](Scalar epsilon, Scalar budget) {
    LowerBoundInstance lb = gen_lower_bound(epsilon, budget);
    return py::make_tuple(lb.instance, lb.bids.bids, lb.critical_cost);
  }, py::arg("epsilon"), py::arg("budget") = Scalar(1));

  m.def("fractional_opt", [](const Instance& inst) {
    FractionalSolution s = fractional_opt(inst);
    return py::make_tuple(s.fopt, s.allocation);
  });
  m.def("integral_opt", [](const Instance& inst, std::size_t limit) {
    IntegralSolution s = integral_opt(inst, limit);
    return py::make_tuple(s.opt, s.chosen);
  }, py::arg("instance"), py::arg("limit") = kDefaultOracleLimit);

  py::class_<PruneResult>(m, "PruneResult")
      .def_readonly("r", &PruneResult::r)
      .def_readonly("kept", &PruneResult::kept)
      .def_readonly("star", &PruneResult::star)
      .def_readonly("rest", &PruneResult::rest)
      .def_readonly("v_kept", &PruneResult::v_kept)
      .def_readonly("v_rest", &PruneResult::v_rest);
  m.def("prune", [](const std::vector<Scalar>& values, const std::vector<Scalar>& bids, const Scalar& budget) {
    return prune(values, BidProfile{bids}, budget);
  }, py::arg("values"), py::arg("bids"), py::arg("budget"));

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("winners", &Outcome::winners)
      .def_readonly("payments", &Outcome::payments)
      .def_readonly("value", &Outcome::value)
      .def("wins", &Outcome::wins)
      .def("payment", &Outcome::payment)
      .def("total_payment", &Outcome::total_payment);
  m.def("run", [](MechanismKind kind, const Instance& inst, std::optional<std::vector<Scalar>> bids,
                  std::uint64_t seed) {
    return run(kind, inst, bids ? BidProfile{*bids} : truthful_bids(inst), seed);
  }, py::arg("mechanism"), py::arg("instance"), py::arg("bids") = py::none(), py::arg("seed") = 0);

  m.def("acceptance_probabilities", [](const Instance& inst, std::optional<std::vector<Scalar>> bids) {
    const BidProfile profile = bids ? BidProfile{*bids} : truthful_bids(inst);
    const auto v = inst.values();
    AllocationProbabilities a = acceptance_probabilities(prune(v, profile, inst.budget), profile, inst.budget);
    return py::make_tuple(a.x, a.expected_value);
  }, py::arg("instance"), py::arg("bids") = py::none());

  // Returns (fopt, alg, ratio); ratio is None when nothing was bought.
  m.def("ratio", [](const Instance& inst, MechanismKind kind, std::uint64_t seed, std::size_t trials) {
    const RatioMode mode = trials > 0 ? RatioMode::monte_carlo : RatioMode::exact;
    RatioResult r = ratio(inst, kind, mode, seed, trials > 0 ? trials : 1);
    return py::make_tuple(r.fopt, r.alg, r.ratio ? py::cast(*r.ratio) : py::none());
  }, py::arg("instance"), py::arg("mechanism"), py::arg("seed") = 0, py::arg("trials") = 0);
  m.def("within_proven_bound", &within_proven_bound);

  // Violations come back as (item or None, check, witness) triples.
  m.def("audit_truthfulness", [](MechanismKind kind, const Instance& inst, std::size_t agent,
                                 const std::vector<Scalar>& deviations, const std::vector<std::uint64_t>& seeds) {
    AuditReport report = audit_truthfulness(kind, inst, agent, deviations, seeds);
    py::list out;
    for (const auto& v : report.violations) out.append(py::make_tuple(opt_index(v.item), v.check, v.witness));
    return py::make_tuple(report.passed, report.checked_points, out);
  }, py::arg("mechanism"), py::arg("instance"), py::arg("agent"), py::arg("deviations") = std::vector<Scalar>{},
     py::arg("seeds") = std::vector<std::uint64_t>{0});

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = dispatch(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command-line tool in-process; returns (exit code, stdout, stderr).");
}
