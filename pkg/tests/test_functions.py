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
import math

import mpmath
import numpy as np
import pytest

import lib.errors as errors
import lib.functions as functions

from lib.functions import FunctionClass

LOG_CONVEX = [
    ("exp", (-3.0, 3.0)),
    ("exp:a=2", (-2.0, 2.0)),
    ("recip", (0.1, 5.0)),
    ("pow:p=-2", (0.2, 4.0)),
]
SUPERQUADRATIC = ["pow:p=2", "pow:p=3", "pow:p=2.5"]


class TestParseFunction:

    def test_builtins(self):
        exp = functions.parse_function("exp")
        assert exp.has(FunctionClass.LogConvex) and exp.has(FunctionClass.Convex)
        assert not exp.has(FunctionClass.Superquadratic)
        assert exp(1.0) == pytest.approx(math.e)

    def test_scaled_exp(self):
        f = functions.parse_function("exp:a=2")
        assert f.params == {"a": 2.0}
        assert f(1.0) == pytest.approx(math.exp(2.0))

    def test_recip_is_negative_power(self):
        f = functions.parse_function("recip")
        assert f.params["p"] == -1.0
        assert f.has(FunctionClass.LogConvex)
        assert not f.domain.contains(0.0)
        assert f(4.0) == pytest.approx(0.25)

    @pytest.mark.parametrize("p, superquadratic", [(2.0, True), (2.5, True), (1.5, False)])
    def test_power_classes(self, p, superquadratic):
        f = functions.parse_function(f"pow:p={p}")
        assert f.has(FunctionClass.Convex)
        assert f.has(FunctionClass.Superquadratic) is superquadratic
        assert not f.has(FunctionClass.LogConvex)
        assert f(0.0) == 0.0

    @pytest.mark.parametrize("c, superquadratic", [(-1.5, True), (-2.0, True), (-0.5, False), (0.0, True)])
    def test_constant_classes(self, c, superquadratic):
        f = functions.parse_function(f"const:c={c}")
        assert f.has(FunctionClass.Superquadratic) is superquadratic
        assert f(3.0) == c

    @pytest.mark.parametrize("spec", ["sin", "exp:b=1", "pow", "pow:p=x", "const:c=inf", "exp:a"])
    def test_rejects_unknown(self, spec):
        with pytest.raises(errors.UnknownFunction):
            functions.parse_function(spec)

    def test_non_integer_power_on_positive_reals(self):
        f = functions.parse_function("pow:p=2.5")
        assert f(4.0) == pytest.approx(32.0)

    def test_outside_domain(self):
        with pytest.raises(errors.DomainViolation):
            functions.parse_function("recip")(0.0)
        with pytest.raises(errors.DomainViolation):
            functions.parse_function("pow:p=2")(-1.0)


class TestConstants:

    def test_kf_exp_is_one(self):
        exp = functions.parse_function("exp")
        for x, y in [(0.0, 1.0), (-2.0, 3.0), (5.0, 5.0)]:
            assert functions.kf_constant(exp, x, y) == pytest.approx(1.0, abs=1e-14)

    def test_kf_recip(self):
        assert functions.kf_constant(functions.parse_function("recip"), 1.0, 4.0) == pytest.approx(0.64)

    def test_kf_power_closed_form(self):
        m, M, p = 1.0, 4.0, -1.0
        closed = ((m + M) / (2.0 * math.sqrt(m * M))) ** (2.0 * p)
        assert closed == pytest.approx(0.64)
        assert functions.kf_constant(functions.parse_function("pow:p=-1"), m, M) == pytest.approx(closed)

    def test_kf_division_by_zero(self):
        with pytest.raises(errors.DivisionByZero):
            functions.kf_constant(functions.parse_function("const:c=0"), 1.0, 2.0)

    @pytest.mark.parametrize("spec, span", LOG_CONVEX)
    def test_kf_at_most_one(self, spec, span):
        f = functions.parse_function(spec)
        rng = np.random.default_rng(1)
        for x, y in rng.uniform(*span, size=(200, 2)):
            assert functions.kf_constant(f, x, y) <= 1.0 + 1e-12

    def test_r_alpha(self):
        assert functions.r_alpha(0.5) == 0.5
        assert functions.r_alpha(0.3) == pytest.approx(0.3)
        assert functions.r_alpha(0.7) == pytest.approx(0.3)
        assert functions.r_alpha(2.0) == -1.0

    def test_tilde_t(self):
        assert functions.tilde_t(1.0, 1.0, 3.0) == 0.0
        assert functions.tilde_t(3.0, 1.0, 3.0) == 0.0
        assert functions.tilde_t(2.0, 1.0, 3.0) == 0.5
        assert functions.tilde_t(0.25, 0.0, 1.0) == pytest.approx(0.25)

    def test_tilde_t_matches_r_alpha(self):
        m, M = -1.0, 2.5
        for t in np.linspace(-4.0, 6.0, 41):
            assert functions.tilde_t(t, m, M) == pytest.approx(functions.r_alpha((M - t) / (M - m)), abs=1e-14)

    def test_tilde_t_degenerate(self):
        with pytest.raises(errors.DegenerateInterval):
            functions.tilde_t(1.0, 2.0, 2.0)

    def test_interpolation_constants(self):
        c = functions.interpolation_constants(functions.parse_function("recip"), 1.0, 4.0)
        assert (c.kf, c.m, c.M) == (pytest.approx(0.64), 1.0, 4.0)


class TestInterpolant:

    def test_interpolant_against_mpmath(self):
        mpmath.mp.dps = 30
        f = functions.parse_function("recip")
        m, M = 1.0, 3.0
        g = functions.interpolant(f, m, M)
        K = mpmath.mpf(1) / mpmath.mpf(2) ** 2 / (mpmath.mpf(1) * mpmath.mpf(1) / 3)
        for t in [0.5, 1.0, 1.7, 2.0, 3.0, 4.5]:
            tt = mpmath.mpf(t)
            weight = mpmath.mpf(1) / 2 - abs(tt - 2) / 2
            expected = K ** weight * mpmath.mpf(1) ** ((3 - tt) / 2) * (mpmath.mpf(1) / 3) ** ((tt - 1) / 2)
            assert float(g(t)) == pytest.approx(float(expected), rel=1e-12)

    def test_interpolant_meets_f_at_ends(self):
        f = functions.parse_function("exp")
        g = functions.interpolant(f, 0.0, 2.0)
        np.testing.assert_allclose(g(np.array([0.0, 2.0])), [1.0, math.exp(2.0)], rtol=1e-14)

    def test_linear_bound(self):
        L = functions.linear_bound(functions.parse_function("pow:p=2"), 1.0, 3.0)
        np.testing.assert_allclose(L(np.array([1.0, 2.0, 3.0])), [1.0, 5.0, 9.0])

    def test_sq_correction(self):
        h = functions.sq_correction(functions.parse_function("pow:p=2"), 1.0, 3.0)
        np.testing.assert_allclose(h(np.array([1.0, 2.0, 3.0])), [0.0, 1.0, 0.0])

    def test_sq_correction_reflection(self):
        h = functions.sq_correction(functions.parse_function("pow:p=3"), 1.0, 4.0)
        t = np.linspace(1.0, 4.0, 13)
        np.testing.assert_allclose(h(t), h(5.0 - t), rtol=1e-13)


class TestLogConvexChain:

    def test_exp_example(self):
        result = functions.check_logconvex_chain(functions.parse_function("exp"), 0.0, 1.0, 0.25)
        np.testing.assert_allclose(result.values, [math.exp(0.75), math.exp(0.75), 0.25 + 0.75 * math.e], rtol=1e-12)
        assert result.holds and not result.reversed
        assert result.links[0].equality
        assert not result.links[1].equality

    def test_recip_midpoint_equality(self):
        result = functions.check_logconvex_chain(functions.parse_function("recip"), 1.0, 4.0, 0.5)
        np.testing.assert_allclose(result.values, [0.4, 0.4, 0.625], rtol=1e-12)
        assert result.holds and result.links[0].equality

    def test_exp_reversed(self):
        result = functions.check_logconvex_chain(functions.parse_function("exp"), 0.0, 1.0, 2.0)
        np.testing.assert_allclose(result.values, [math.exp(-1.0), math.exp(-1.0), 2.0 - math.e], rtol=1e-12)
        assert result.reversed and result.holds

    def test_outside_domain(self):
        with pytest.raises(errors.DomainViolation):
            functions.check_logconvex_chain(functions.parse_function("recip"), 1.0, 4.0, 2.0)

    @pytest.mark.parametrize("spec, span", LOG_CONVEX)
    def test_grid(self, spec, span, full_acceptance):
        f = functions.parse_function(spec)
        points = np.linspace(*span, 50 if full_acceptance else 8)
        alphas = np.linspace(0.0, 1.0, 101 if full_acceptance else 11)
        for x in points:
            for y in points:
                for alpha in alphas:
                    result = functions.check_logconvex_chain(f, x, y, alpha)
                    assert result.holds, (spec, x, y, alpha, result)

    @pytest.mark.parametrize("spec, span", LOG_CONVEX)
    def test_reversed_grid(self, spec, span, full_acceptance):
        f = functions.parse_function(spec)
        points = np.linspace(*span, 50 if full_acceptance else 8)
        checked = 0
        for x in points:
            for y in points:
                for alpha in (-1.0, -0.5, 1.5, 2.0):
                    try:
                        result = functions.check_logconvex_chain(f, x, y, alpha)
                    except errors.DomainViolation:
                        continue
                    checked += 1
                    assert result.reversed and result.holds, (spec, x, y, alpha, result)
        assert checked > 0


class TestConvexityAndYoung:

    def test_convexity(self):
        rng = np.random.default_rng(2)
        for spec in ("pow:p=2", "pow:p=3"):
            f = functions.parse_function(spec)
            for x, y, alpha in zip(rng.uniform(0, 5, 200), rng.uniform(0, 5, 200), rng.uniform(0, 1, 200)):
                assert functions.check_convexity(f, x, y, alpha).holds

    def test_convexity_reversed(self):
        result = functions.check_convexity(functions.parse_function("exp"), 0.0, 1.0, 1.5)
        assert result.reversed and result.holds

    def test_young(self):
        result = functions.check_young(4.0, 1.0, 0.5)
        np.testing.assert_allclose(result.values, [2.0, 2.5])
        assert result.holds

    def test_young_reversed(self):
        result = functions.check_young(4.0, 1.0, 2.0)
        np.testing.assert_allclose(result.values, [16.0, 7.0])
        assert result.reversed and result.holds

    def test_young_needs_positive_arguments(self):
        with pytest.raises(errors.DomainViolation):
            functions.check_young(0.0, 1.0, 0.5)


class TestSuperquadratic:

    def test_square_identity(self):
        check = functions.check_superquadratic_characterization(functions.parse_function("pow:p=2"), 1.0, 3.0, 0.5)
        assert check.holds
        assert check.slack == pytest.approx(0.0, abs=1e-14)

    def test_cube(self):
        check = functions.check_superquadratic_characterization(functions.parse_function("pow:p=3"), 0.0, 1.0, 0.5)
        assert check.holds
        assert check.slack == pytest.approx(0.25)

    def test_constant_in_range(self):
        f = functions.parse_function("const:c=-1.5")
        for x, y, alpha in [(0.0, 1.0, 0.5), (2.0, 7.0, 0.1), (3.0, 3.0, 1.0)]:
            check = functions.check_superquadratic_characterization(f, x, y, alpha)
            assert check.slack == pytest.approx(1.5)

    def test_rejects_negative_points(self):
        with pytest.raises(errors.DomainViolation):
            functions.check_superquadratic_characterization(functions.parse_function("pow:p=2"), -1.0, 1.0, 0.5)

    def test_rejects_alpha_outside_unit_interval(self):
        with pytest.raises(errors.DomainViolation):
            functions.check_superquadratic_characterization(functions.parse_function("pow:p=2"), 1.0, 2.0, 1.5)

    @pytest.mark.parametrize("spec", SUPERQUADRATIC)
    def test_random_triples(self, spec):
        f = functions.parse_function(spec)
        rng = np.random.default_rng(4)
        for x, y, alpha in zip(rng.uniform(0, 5, 300), rng.uniform(0, 5, 300), rng.uniform(0, 1, 300)):
            assert functions.check_superquadratic_characterization(f, x, y, alpha).holds

    def test_square_slack_vanishes_on_grid(self):
        f = functions.parse_function("pow:p=2")
        for x in np.linspace(0.0, 2.0, 20):
            for y in np.linspace(0.0, 2.0, 20):
                for alpha in np.linspace(0.0, 1.0, 11):
                    slack = functions.check_superquadratic_characterization(f, x, y, alpha).slack
                    assert abs(slack) <= 1e-12

    def test_definition_square(self):
        check = functions.check_superquadratic_definition(functions.parse_function("pow:p=2"), 1.0,
                                                          np.arange(0.0, 5.01, 0.5))
        assert check.holds
        assert check.c_s == pytest.approx(2.0, rel=1e-6)
        assert abs(check.worst_slack) <= 1e-6

    def test_definition_cube(self):
        check = functions.check_superquadratic_definition(functions.parse_function("pow:p=3"), 1.0, np.arange(0.0, 6.0))
        assert check.holds
        assert check.worst_slack >= 0.0

    def test_definition_exp_fails(self):
        check = functions.check_superquadratic_definition(functions.parse_function("exp"), 1.0, np.arange(0.0, 6.0))
        assert not check.holds
        assert check.worst_slack < 0.0
        assert check.candidate == "derivative"

    def test_definition_at_zero_uses_forward_difference(self):
        check = functions.check_superquadratic_definition(functions.parse_function("pow:p=2"), 0.0, [0.0, 1.0, 2.0])
        assert check.holds
