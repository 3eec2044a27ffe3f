#
# MIT License
#
# (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
# Permission is hereby granted, free of charge, to any person obtaining a
# copy of this software and associated documentation files (the "Software"),
# to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense,
# and/or sell copies of the Software, and to permit persons to whom the
# Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included
# in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
# OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
# ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
# OTHER DEALINGS IN THE SOFTWARE.
#
import pytest

import lib.errors as errors
import lib.functions as functions
import lib.hunt as hunt

RECIP = functions.parse_function("recip")
EXP = functions.parse_function("exp")


class TestHunt:

    def test_dropping_the_f_order_breaks_the_chain(self):
        found = hunt.hunt_counterexample("LC-QUAD", "cond-i-f", RECIP, budget=100, seed=0)
        assert found is not None
        assert not found.report.passed
        assert found.report.min_link_eigenvalue < 0
        assert 0 <= found.sample < 100
        assert found.report.seed == [0, found.sample]

    def test_same_seed_same_counterexample(self):
        a = hunt.hunt_counterexample("LC-QUAD", "cond-i-f", RECIP, budget=100, seed=3)
        b = hunt.hunt_counterexample("LC-QUAD", "cond-i-f", RECIP, budget=100, seed=3)
        assert a.sample == b.sample

    def test_nothing_relaxed_finds_nothing(self):
        assert hunt.hunt_counterexample("LC-QUAD", "none", EXP, dim=2, budget=10, seed=1) is None

    def test_zero_budget(self):
        assert hunt.hunt_counterexample("LC-QUAD", "cond-i-f", RECIP, budget=0) is None

    def test_relaxation_must_belong_to_theorem(self):
        with pytest.raises(errors.UnknownRelaxation):
            hunt.hunt_counterexample("LC-QUAD", "equal-sum", EXP, budget=1)
        with pytest.raises(errors.UnknownRelaxation):
            hunt.hunt_counterexample("LC-QUAD", "bogus", EXP, budget=1)
        with pytest.raises(errors.UnknownRelaxation):
            hunt.hunt_counterexample("LC-MID", "cond-i-f", EXP, budget=1)

    def test_unreachable_relaxation(self):
        # an increasing f never violates f(m) <= f(M)
        with pytest.raises(errors.ExhaustedRetries):
            hunt.hunt_counterexample("LC-QUAD", "cond-i-f", EXP, budget=1)

    @pytest.mark.parametrize("spec", ["recip", "pow:p=-1", "exp"])
    def test_unrelaxed_hunt_never_fails(self, spec, full_acceptance):
        f = functions.parse_function(spec)
        assert hunt.hunt_counterexample("LC-QUAD", "none", f, budget=10000 if full_acceptance else 200, seed=7) is None
