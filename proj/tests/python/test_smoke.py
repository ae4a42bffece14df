# Copyright 2026 The pruneprice Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
from fractions import Fraction as F

import pytest

import pruneprice as pp


def three_items():
    return pp.instance(4, [(6, 2), (4, 2), (2, 2)])


def four_halves():
    return pp.instance(1, [(1, "1/2")] * 4)


def test_scalars_are_exact_fractions():
    inst = pp.instance("1/2", [("1.25", F(1, 10))])
    assert inst.budget == F(1, 2)
    assert inst.items[0].value == F(5, 4)
    assert isinstance(inst.items[0].cost, F)
    with pytest.raises(TypeError):
        pp.instance(0.5, [(1, 0)])


def test_json_round_trip():
    inst = three_items()
    assert pp.Instance.from_json(inst.to_json()) == inst
    doc, bids = pp.parse_document(pp.serialize(inst, [1, 2, 3]))
    assert doc == inst
    assert bids == [1, 2, 3]
    with pytest.raises(pp.ValidationError):
        pp.Instance.from_json('{"budget":"1","items":[]}')


def test_prune_and_mechanisms():
    p = pp.prune([6, 4, 2], [2, 2, 2], 4)
    assert p.r == F(3, 2)
    assert p.kept == [0, 1]
    assert p.star == 0

    out = pp.run(pp.Mechanism.deterministic, three_items())
    assert out.winners == [0]
    assert out.payment(0) == F(16, 5)

    x, ev = pp.acceptance_probabilities(three_items())
    assert x == [F(7, 8), F(1, 8), 0]
    assert ev == F(23, 4)


def test_ratios_and_bounds():
    inst, bids, _ = pp.gen_lower_bound(F(1, 100))
    fopt, alg, r = pp.ratio(inst, pp.Mechanism.deterministic)
    assert r == F(599, 200)
    assert pp.within_proven_bound(pp.Mechanism.deterministic, fopt, alg)

    fopt, alg, r = pp.ratio(four_halves(), pp.Mechanism.randomized)
    assert (fopt, alg, r) == (2, 1, 2)
    assert pp.fractional_opt(four_halves())[0] == 2
    assert pp.integral_opt(four_halves()) == (2, [0, 1])


def test_truthfulness_audit():
    passed, points, violations = pp.audit_truthfulness(pp.Mechanism.randomized, four_halves(), 2, seeds=[1, 2, 3])
    assert passed
    assert points > 0
    assert violations == []


def test_generator_is_seeded():
    a = pp.gen_random(5, seed=3)
    assert a == pp.gen_random(5, seed=3)
    assert len(a) == 5
    assert all(item.cost <= a.budget for item in a.items)


def test_cli_in_process():
    code, out, err = pp.cli(["gen", "--lower-bound", "--epsilon", "1/10"])
    assert code == 0, err
    doc = json.loads(out)
    assert doc["budget"] == "1"
    code, _, err = pp.cli(["run", "--mechanism", "nope", "--instance", "x.json"])
    assert code == 2
    assert err
