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

"""Exact budget-feasible posted-price mechanisms.

Every number is a ``fractions.Fraction``; ints and exact strings such as
``"3/4"`` are accepted wherever a number is expected. Floats are rejected.
"""

try:
    from . import _pruneprice as _core
except ImportError:  # in-tree builds put the extension on PYTHONPATH directly
    import _pruneprice as _core

Error = _core.Error
ParseError = _core.ParseError
ValidationError = _core.ValidationError
EmptyMarketError = _core.EmptyMarketError
SizeLimitError = _core.SizeLimitError
DegenerateSupportError = _core.DegenerateSupportError

Mechanism = _core.Mechanism
Item = _core.Item
Instance = _core.Instance
PruneResult = _core.PruneResult
Outcome = _core.Outcome

parse_document = _core.parse_document
serialize = _core.serialize
normalize = _core.normalize
truthful_bids = _core.truthful_bids
gen_random = _core.gen_random
gen_lower_bound = _core.gen_lower_bound
fractional_opt = _core.fractional_opt
integral_opt = _core.integral_opt
prune = _core.prune
run = _core.run
acceptance_probabilities = _core.acceptance_probabilities
ratio = _core.ratio
within_proven_bound = _core.within_proven_bound
audit_truthfulness = _core.audit_truthfulness
cli = _core.cli


def instance(budget, items):
    """Build an instance from ``(value, cost)`` pairs, labelled by position."""
    return Instance(budget, [Item(i, v, c) for i, (v, c) in enumerate(items)])


def main(argv=None):
    import sys

    code, out, err = cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


__all__ = [name for name in dir() if not name.startswith("_")]
