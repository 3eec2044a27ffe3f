#
#  MIT License
#
#  (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
#  Permission is hereby granted, free of charge, to any person obtaining a
#  copy of this software and associated documentation files (the "Software"),
#  to deal in the Software without restriction, including without limitation
#  the rights to use, copy, modify, merge, publish, distribute, sublicense,
#  and/or sell copies of the Software, and to permit persons to whom the
#  Software is furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included
#  in all copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
#  IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
#  FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
#  THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
#  OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
#  ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
#  OTHER DEALINGS IN THE SOFTWARE.
#

"""Chain builders for the refined Jensen-Mercer and Mond-Pecaric operator inequalities.

Every theorem id compiles an instance into an ExpressionChain, an ascending
list of Hermitian terms. Sub-expressions depending on one operator argument
are composed into a single scalar function and applied by functional
calculus, so each argument is diagonalized once."""

import logging
import math

from dataclasses import dataclass, field

import numpy as np

import lib.config as config
import lib.errors as errors
import lib.forge as forge
import lib.functions as functions
import lib.hermitian as hermitian
import lib.maps as maps
import lib.rng as rng

from lib.forge import SumRelation
from lib.functions import FunctionClass, Interval
from lib.hermitian import HermitianMatrix


CONDITION_RELAXATIONS = ("cond-i-f", "cond-i-sum", "cond-ii-f", "cond-ii-sum")
EQUAL_SUM_RELAXATIONS = ("equal-sum",)


@dataclass(frozen=True)
class TheoremInfo:
    id: str
    instance: str           # quadruple, midpoint, mercer or multi
    maps: str               # none, single or family
    function_class: FunctionClass
    relations: tuple        # accepted SumRelation values
    relaxations: tuple
    terms: int
    nonneg_A: bool = False


def _info(id, instance, maps, cls, relations, relaxations, terms, nonneg_A=False):
    return TheoremInfo(id, instance, maps, cls, tuple(relations), tuple(relaxations), terms, nonneg_A)


_ANY = tuple(SumRelation)
_EQ = (SumRelation.EqualSum,)
_LC = FunctionClass.LogConvex
_SQ = FunctionClass.Superquadratic

THEOREMS = {
    info.id: info for info in (
        _info("JM-BASE", "mercer", "family", FunctionClass.Convex, _EQ, (), 2),
        _info("MOS-BASE", "quadruple", "single", FunctionClass.Convex, _EQ, EQUAL_SUM_RELAXATIONS, 2),
        _info("LC-QUAD", "quadruple", "none", _LC, _ANY, CONDITION_RELAXATIONS, 5),
        _info("LC-POW", "quadruple", "none", _LC, _ANY, CONDITION_RELAXATIONS, 5),
        _info("LC-MID", "midpoint", "none", _LC, _EQ, (), 5),
        _info("LC-MAP", "quadruple", "single", _LC, _EQ, EQUAL_SUM_RELAXATIONS, 5),
        _info("LC-MAP-V2", "quadruple", "single", _LC, _EQ, EQUAL_SUM_RELAXATIONS, 5),
        _info("LC-MAP-V3", "quadruple", "single", _LC, _EQ, EQUAL_SUM_RELAXATIONS, 5),
        _info("LC-MULTI", "multi", "family", _LC, _EQ, EQUAL_SUM_RELAXATIONS, 5),
        _info("LC-MERCER", "mercer", "family", _LC, _EQ, (), 3),
        _info("SQ-MAP", "quadruple", "single", _SQ, _EQ, EQUAL_SUM_RELAXATIONS, 2, True),
        _info("SQ-POW", "quadruple", "single", _SQ, _EQ, EQUAL_SUM_RELAXATIONS, 2, True),
        _info("SQ-MAP-V2", "quadruple", "single", _SQ, _EQ, EQUAL_SUM_RELAXATIONS, 2, True),
        _info("SQ-MAP-V3", "quadruple", "single", _SQ, _EQ, EQUAL_SUM_RELAXATIONS, 2, True),
        _info("SQ-MULTI-A", "multi", "family", _SQ, _EQ, EQUAL_SUM_RELAXATIONS, 2, True),
        _info("SQ-MULTI-B", "multi", "family", _SQ, _EQ, EQUAL_SUM_RELAXATIONS, 2, True),
        _info("SQ-MERCER", "mercer", "family", _SQ, _EQ, (), 2, True),
        _info("SQ-QUAD", "quadruple", "none", _SQ, _ANY, CONDITION_RELAXATIONS, 2, True),
        _info("SQ-MID", "midpoint", "none", _SQ, _EQ, (), 2, True),
    )
}


def theorem_info(theorem: str) -> TheoremInfo:

    """Registry entry for a theorem id (case-insensitive)"""

    key = str(theorem).strip().upper()
    if key not in THEOREMS:
        raise errors.UnknownTheorem(f"unknown theorem id {theorem!r}")
    return THEOREMS[key]


def function_mismatch(theorem: str, f: functions.FunctionDescriptor) -> str:

    """Reason f cannot be used with the theorem, or None"""

    info = theorem_info(theorem)
    if not f.has(info.function_class):
        return f"function class mismatch: {info.id} needs {info.function_class.value}, {f.id} is not"
    if info.id == "LC-POW" and not ("p" in f.params and f.params["p"] <= 0):
        return f"LC-POW needs pow:p=<p> with p <= 0, got {f.id}"
    if info.id == "SQ-POW" and not ("p" in f.params and f.params["p"] >= 2):
        return f"SQ-POW needs pow:p=<p> with p >= 2, got {f.id}"
    return None


@dataclass(frozen=True)
class ExpressionChain:
    terms: tuple
    labels: tuple
    theorem: str


@dataclass(frozen=True)
class LinkReport:
    min_eigenvalue: float
    max_eigenvalue: float
    frobenius_norm: float
    tolerance: float
    holds: bool
    equality: bool

    def to_json(self) -> dict:
        return {
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
            "frobenius_norm": self.frobenius_norm,
            "tolerance": self.tolerance,
            "holds": self.holds,
            "equality": self.equality,
        }


@dataclass(frozen=True)
class ChainReport:
    theorem: str
    labels: tuple
    links: tuple
    passed: bool
    tol: float
    digest: str = None
    seed: object = None

    @property
    def min_link_eigenvalue(self) -> float:
        return min(link.min_eigenvalue for link in self.links)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "labels": list(self.labels),
            "links": [link.to_json() for link in self.links],
            "passed": self.passed,
            "tol": self.tol,
            "digest": self.digest,
            "seed": self.seed,
        }


# Scalar function algebra used to compile one term per operator argument

@dataclass(frozen=True)
class _Scalar:
    fn: object
    domain: Interval = functions.REAL_LINE
    label: str = "u"

    def __add__(self, other):
        return _Scalar(lambda t, a=self.fn, b=other.fn: a(t) + b(t),
                       self.domain.intersect(other.domain), f"{self.label} + {other.label}")

    def __sub__(self, other):
        return _Scalar(lambda t, a=self.fn, b=other.fn: a(t) - b(t),
                       self.domain.intersect(other.domain), f"{self.label} - {other.label}")

    def scale(self, c: float):
        return _Scalar(lambda t, a=self.fn: c * a(t), self.domain, f"{c!r}*({self.label})")

    def compose(self, a: float, s: float, arg: str):

        """t -> u(a + s t), s = +1 or -1"""

        dom = self.domain
        if s > 0:
            lo, lo_open = (None if dom.lo is None else dom.lo - a), dom.lo_open
            hi, hi_open = (None if dom.hi is None else dom.hi - a), dom.hi_open
        else:
            lo, lo_open = (None if dom.hi is None else a - dom.hi), dom.hi_open
            hi, hi_open = (None if dom.lo is None else a - dom.lo), dom.lo_open
        label = self.label.replace("(t)", f"({arg})")
        return _Scalar(lambda t, u=self.fn: u(a + s * t), Interval(lo, hi, lo_open, hi_open), label)

    def __call__(self, X: HermitianMatrix) -> HermitianMatrix:
        return hermitian.apply_callable(X, self.fn, self.domain, self.label)


class _Toolkit:

    """f, g, L, h and e for one (f, m, M), plus map helpers"""

    def __init__(self, f: functions.FunctionDescriptor, m: float, M: float, kf: float = None):

        if not M > m:
            raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")
        self.m, self.M, self.width = m, M, M - m
        self.f_desc = f
        self.fm, self.fM = f(m), f(M)
        if kf is None and f.has(FunctionClass.LogConvex):
            kf = functions.kf_constant(f, m, M)
        self.kf = kf

        self.f = _Scalar(f.eval, f.domain, f"{f.id}(t)")
        self.L = _Scalar(functions.linear_bound(f, m, M), functions.REAL_LINE, "L(t)")
        self.h = _Scalar(functions.sq_correction(f, m, M), Interval(m, M), "h(t)")
        if kf is not None:
            self.g = _Scalar(functions.interpolant(f, m, M, kf), functions.REAL_LINE, "g(t)")

    def e(self, a: float = 0.0, s: float = 1.0, arg: str = "t") -> _Scalar:

        """e(a + s t) with e(t) = t f(M-m) / (M-m)"""

        slope = self.f_desc(self.width) / self.width
        return _Scalar(lambda t: slope * (a + s * np.asarray(t, dtype=float)), functions.REAL_LINE, f"e({arg})")

    def lower_A(self) -> _Scalar:
        # f(t) - f(m-t) - e(m-t)
        return self.f - self.f.compose(self.m, -1.0, "m-t") - self.e(self.m, -1.0, "m-t")

    def upper_D(self) -> _Scalar:
        # f(t) - f(t-M) - e(t-M)
        return self.f - self.f.compose(-self.M, 1.0, "t-M") - self.e(-self.M, 1.0, "t-M")


def _phi(phi, X: HermitianMatrix) -> HermitianMatrix:
    return maps.apply_map(phi, X)


def _sum(family: maps.MapFamily, matrices) -> HermitianMatrix:
    return maps.apply_family(family, matrices)


def _const(c: float, dim: int) -> HermitianMatrix:
    return HermitianMatrix.scalar(c, dim)


def _check_quadruple(info: TheoremInfo, inst, f, tol: float, skip: frozenset, prefix: str = ""):

    eps = tol * max(1.0, abs(inst.m), abs(inst.M))
    checks = [
        ("A <= m", hermitian.spectral_bounds(inst.A)[1] <= inst.m + eps),
        ("m <= B <= M", _within(inst.B, inst.m, inst.M, eps)),
        ("m <= C <= M", _within(inst.C, inst.m, inst.M, eps)),
        ("D >= M", hermitian.spectral_bounds(inst.D)[0] >= inst.M - eps),
    ]
    if info.nonneg_A:
        checks.append(("0 <= A", hermitian.spectral_bounds(inst.A)[0] >= -eps))
    for name, ok in checks:
        if not ok:
            raise errors.HypothesisViolation(prefix + name, f"{info.id} instance violates {name}")

    verdict = hermitian.loewner_leq(inst.B + inst.C, inst.A + inst.D, tol)

    if info.relaxations == CONDITION_RELAXATIONS:
        fm, fM = f(inst.m), f(inst.M)
        cond_i = (verdict.leq or "cond-i-sum" in skip) and (fm <= fM or "cond-i-f" in skip)
        cond_ii = (verdict.geq or "cond-ii-sum" in skip) and (fM <= fm or "cond-ii-f" in skip)
        if not (cond_i or cond_ii):
            raise errors.HypothesisViolation(
                "condition (i) or (ii)",
                f"neither B+C <= A+D with f(m) <= f(M) nor A+D <= B+C with f(M) <= f(m) holds "
                f"(f(m)={fm!r}, f(M)={fM!r}, sum gap in [{verdict.min_eigenvalue_of_difference!r}, "
                f"{verdict.max_eigenvalue_of_difference!r}])")
    elif "equal-sum" not in skip and verdict.relation is not hermitian.Relation.Equal:
        raise errors.HypothesisViolation(
            prefix + "A + D = B + C",
            f"difference eigenvalues in [{verdict.min_eigenvalue_of_difference!r}, "
            f"{verdict.max_eigenvalue_of_difference!r}]")


def _within(X: HermitianMatrix, lo: float, hi: float, eps: float) -> bool:
    low, high = hermitian.spectral_bounds(X)
    return low >= lo - eps and high <= hi + eps


def _check_hypotheses(info: TheoremInfo, instance, f, tol: float, skip: frozenset):

    reason = function_mismatch(info.id, f)
    if reason is not None:
        raise errors.HypothesisViolation("function class", reason)

    if info.instance == "quadruple":
        _check_quadruple(info, instance, f, tol, skip)
    elif info.instance == "multi":
        for i, quadruple in enumerate(instance.quadruples, 1):
            if (quadruple.m, quadruple.M) != (instance.m, instance.M):
                raise errors.ShapeMismatch(f"quadruple {i} uses a different (m, M)")
            _check_quadruple(info, quadruple, f, tol, skip, f"quadruple {i}: ")
    elif info.instance == "midpoint":
        violations = forge.validate_instance(instance, tol)
        if violations:
            raise errors.HypothesisViolation("A <= m <= (A+D)/2 <= M <= D", "; ".join(violations))
        if info.nonneg_A and hermitian.spectral_bounds(instance.A)[0] < -tol * max(1.0, abs(instance.m)):
            raise errors.HypothesisViolation("0 <= A", "midpoint instance has a negative eigenvalue in A")
    elif info.instance == "mercer":
        eps = tol * max(1.0, abs(instance.m), abs(instance.M))
        for i, B in enumerate(instance.B_list, 1):
            if not _within(B, instance.m, instance.M, eps):
                raise errors.HypothesisViolation(f"m <= B_{i} <= M")
        if info.nonneg_A and instance.m < 0:
            raise errors.HypothesisViolation("0 <= A", f"A_i = mI needs m >= 0, got {instance.m!r}")


_INSTANCE_TYPES = {
    "quadruple": forge.QuadrupleInstance,
    "midpoint": forge.MidpointInstance,
    "mercer": forge.MercerInstance,
    "multi": forge.MultiQuadrupleInstance,
}


def _resolve_maps(info: TheoremInfo, instance, given):

    if not isinstance(instance, _INSTANCE_TYPES[info.instance]):
        raise errors.ShapeMismatch(f"{info.id} needs a {info.instance} instance, got {type(instance).__name__}")

    if info.maps == "none":
        if given is not None:
            raise errors.ShapeMismatch(f"{info.id} takes no map")
        return None

    if info.maps == "single":
        if not isinstance(given, maps.PositiveUnitalMap):
            raise errors.ShapeMismatch(f"{info.id} needs a single positive unital map")
        if given.input_dim != instance.dim:
            raise errors.ShapeMismatch(f"map input dimension {given.input_dim} differs from instance dimension {instance.dim}")
        return given

    family = instance.family if given is None else given
    if not isinstance(family, maps.MapFamily):
        raise errors.ShapeMismatch(f"{info.id} needs a map family")
    n = len(instance.B_list) if info.instance == "mercer" else len(instance.quadruples)
    if len(family) != n:
        raise errors.ShapeMismatch(f"{info.id} has {n} operators but {len(family)} maps")
    if any(phi.input_dim != instance.dim for phi in family.maps):
        raise errors.ShapeMismatch(f"family input dimension differs from instance dimension {instance.dim}")
    deviation = maps.family_unital_deviation(family)
    if deviation > 1e-10:
        raise errors.HypothesisViolation("sum P_i(I) = I", f"deviation {deviation!r}")
    return family


def _quad_terms(k: _Toolkit, A, B, C, D) -> list:
    return [
        k.f(B) + k.f(C),
        k.g(B) + k.g(C),
        k.L(B) + k.L(C),
        k.g(A) + k.g(D),
        k.f(A) + k.f(D),
    ]


def _lc_quad(k, inst, phi):
    labels = ("f(B)+f(C)", "g(B)+g(C)", "L(B)+L(C)", "g(A)+g(D)", "f(A)+f(D)")
    return _quad_terms(k, inst.A, inst.B, inst.C, inst.D), labels


def _lc_mid(k, inst, phi):
    X = inst.midpoint
    terms = [k.f(X), k.g(X), k.L(X), (k.g(inst.A) + k.g(inst.D)) * 0.5, (k.f(inst.A) + k.f(inst.D)) * 0.5]
    return terms, ("f(X)", "g(X)", "L(X)", "(g(A)+g(D))/2", "(f(A)+f(D))/2")


def _lc_map(k, inst, phi):
    PB, PC, PA, PD = (_phi(phi, X) for X in (inst.B, inst.C, inst.A, inst.D))
    terms = [
        _phi(phi, k.f(inst.B)) + _phi(phi, k.f(inst.C)),
        _phi(phi, k.g(inst.B)) + _phi(phi, k.g(inst.C)),
        k.L(PB) + k.L(PC),
        k.g(PA) + k.g(PD),
        k.f(PA) + k.f(PD),
    ]
    labels = ("P(f(B))+P(f(C))", "P(g(B))+P(g(C))", "L(P(B))+L(P(C))", "g(P(A))+g(P(D))", "f(P(A))+f(P(D))")
    return terms, labels


def _lc_map_v2(k, inst, phi):
    PB, PC = _phi(phi, inst.B), _phi(phi, inst.C)
    terms = [
        k.f(PB) + k.f(PC),
        k.g(PB) + k.g(PC),
        k.L(PB) + k.L(PC),
        _phi(phi, k.g(inst.A)) + _phi(phi, k.g(inst.D)),
        _phi(phi, k.f(inst.A)) + _phi(phi, k.f(inst.D)),
    ]
    labels = ("f(P(B))+f(P(C))", "g(P(B))+g(P(C))", "L(P(B))+L(P(C))", "P(g(A))+P(g(D))", "P(f(A))+P(f(D))")
    return terms, labels


def _lc_map_v3(k, inst, phi):
    PB, PC, PA = (_phi(phi, X) for X in (inst.B, inst.C, inst.A))
    terms = [
        _phi(phi, k.f(inst.B)) + k.f(PC),
        _phi(phi, k.g(inst.B)) + k.g(PC),
        k.L(PB) + k.L(PC),
        k.g(PA) + _phi(phi, k.g(inst.D)),
        k.f(PA) + _phi(phi, k.f(inst.D)),
    ]
    labels = ("P(f(B))+f(P(C))", "P(g(B))+g(P(C))", "L(P(B))+L(P(C))", "g(P(A))+P(g(D))", "f(P(A))+P(f(D))")
    return terms, labels


def _columns(inst) -> tuple:
    q = inst.quadruples
    return [x.A for x in q], [x.B for x in q], [x.C for x in q], [x.D for x in q]


def _lc_multi(k, inst, family):
    A, B, C, D = _columns(inst)
    SA, SB, SC = _sum(family, A), _sum(family, B), _sum(family, C)
    S = SB + SC
    linear = (2.0 * k.M - S) * (k.fm / k.width) + (S - 2.0 * k.m) * (k.fM / k.width)
    terms = [
        _sum(family, [k.f(X) for X in B]) + k.f(SC),
        _sum(family, [k.g(X) for X in B]) + k.g(SC),
        linear,
        k.g(SA) + _sum(family, [k.g(X) for X in D]),
        k.f(SA) + _sum(family, [k.f(X) for X in D]),
    ]
    labels = ("sum P_i(f(B_i))+f(sum P_i(C_i))", "sum P_i(g(B_i))+g(sum P_i(C_i))",
              "L(sum P_i(B_i))+L(sum P_i(C_i))", "g(sum P_i(A_i))+sum P_i(g(D_i))",
              "f(sum P_i(A_i))+sum P_i(f(D_i))")
    return terms, labels


def _reflect(u: _Scalar, k: _Toolkit) -> _Scalar:
    return u.compose(k.M + k.m, -1.0, "M+m-t")


def _lc_mercer(k, inst, family):
    SB = _sum(family, inst.B_list)
    terms = [
        _sum(family, [k.f(X) for X in inst.B_list]) + _reflect(k.f, k)(SB),
        _sum(family, [k.g(X) for X in inst.B_list]) + _reflect(k.g, k)(SB),
        _const(k.fm + k.fM, SB.dim),
    ]
    labels = ("sum P_i(f(B_i))+f(M+m-sum P_i(B_i))", "sum P_i(g(B_i))+g(M+m-sum P_i(B_i))", "f(m)+f(M)")
    return terms, labels


def _jm_base(k, inst, family):
    SB = _sum(family, inst.B_list)
    terms = [
        _reflect(k.f, k)(SB),
        (k.fm + k.fM) - _sum(family, [k.f(X) for X in inst.B_list]),
    ]
    return terms, ("f(M+m-sum P_i(B_i))", "f(m)+f(M)-sum P_i(f(B_i))")


def _mos_base(k, inst, phi):
    terms = [
        k.f(_phi(phi, inst.B)) + k.f(_phi(phi, inst.C)),
        _phi(phi, k.f(inst.A)) + _phi(phi, k.f(inst.D)),
    ]
    return terms, ("f(P(B))+f(P(C))", "P(f(A))+P(f(D))")


def _log_estimates(k: _Toolkit, theorem: str, upper: dict, lower: dict):

    """Per-operator estimates: f(X) <= L(X) - h(X) on [m, M] and the A/D bounds outside"""

    if not logging.getLogger().isEnabledFor(logging.DEBUG):
        return
    for name, X in upper.items():
        gap = k.L(X) - k.h(X) - k.f(X)
        logging.debug(f"{theorem}: L({name}) - h({name}) - f({name}) has min eigenvalue {hermitian.spectral_bounds(gap)[0]:.6e}")
    for name, (X, u) in lower.items():
        gap = u(X) - k.L(X)
        logging.debug(f"{theorem}: lower bound for {name} exceeds L({name}) by at least {hermitian.spectral_bounds(gap)[0]:.6e}")


def _sq_quad(k, inst, phi):
    fh = k.f + k.h
    _log_estimates(k, "SQ-QUAD", {"B": inst.B, "C": inst.C},
                   {"A": (inst.A, k.lower_A()), "D": (inst.D, k.upper_D())})
    terms = [fh(inst.B) + fh(inst.C), k.lower_A()(inst.A) + k.upper_D()(inst.D)]
    return terms, ("f(B)+f(C)+h(B)+h(C)", "f(A)+f(D)-f(m-A)-e(m-A)-f(D-M)-e(D-M)")


def _sq_mid(k, inst, phi):
    X = inst.midpoint
    _log_estimates(k, "SQ-MID", {"X": X}, {"A": (inst.A, k.lower_A()), "D": (inst.D, k.upper_D())})
    terms = [(k.f + k.h)(X), (k.lower_A()(inst.A) + k.upper_D()(inst.D)) * 0.5]
    return terms, ("f(X)+h(X)", "(f(A)+f(D)-f(m-A)-f(D-M))/2-((m-A)+(D-M))f(M-m)/(2(M-m))")


def _mapped_parts(k: _Toolkit):
    # f(t) - f(m-t) and f(t) - f(t-M), pushed through the map before the e terms
    f_A = k.f - k.f.compose(k.m, -1.0, "m-t")
    f_D = k.f - k.f.compose(-k.M, 1.0, "t-M")
    return f_A, f_D, k.e(k.m, -1.0, "m-t"), k.e(-k.M, 1.0, "t-M")


def _sq_map(k, inst, phi):
    fh = k.f + k.h
    f_A, f_D, e_A, e_D = _mapped_parts(k)
    PB, PC, PA, PD = (_phi(phi, X) for X in (inst.B, inst.C, inst.A, inst.D))
    _log_estimates(k, "SQ-MAP", {"P(B)": PB, "P(C)": PC}, {"A": (inst.A, k.lower_A()), "D": (inst.D, k.upper_D())})
    terms = [
        fh(PB) + fh(PC),
        _phi(phi, f_A(inst.A)) - e_A(PA) + _phi(phi, f_D(inst.D)) - e_D(PD),
    ]
    return terms, ("f(P(B))+f(P(C))+h(P(B))+h(P(C))",
                   "P(f(A))+P(f(D))-P(f(m-A))-e(m-P(A))-P(f(D-M))-e(P(D)-M)")


def _sq_map_v2(k, inst, phi):
    fh = k.f + k.h
    PA, PD = _phi(phi, inst.A), _phi(phi, inst.D)
    _log_estimates(k, "SQ-MAP-V2", {"B": inst.B, "C": inst.C}, {"P(A)": (PA, k.lower_A()), "P(D)": (PD, k.upper_D())})
    terms = [
        _phi(phi, fh(inst.B)) + _phi(phi, fh(inst.C)),
        k.lower_A()(PA) + k.upper_D()(PD),
    ]
    return terms, ("P(f(B))+P(f(C))+P(h(B))+P(h(C))",
                   "f(P(A))+f(P(D))-f(m-P(A))-e(m-P(A))-f(P(D)-M)-e(P(D)-M)")


def _sq_map_v3(k, inst, phi):
    fh = k.f + k.h
    f_A, _, e_A, _ = _mapped_parts(k)
    PB, PA, PD = (_phi(phi, X) for X in (inst.B, inst.A, inst.D))
    _log_estimates(k, "SQ-MAP-V3", {"P(B)": PB, "C": inst.C}, {"A": (inst.A, k.lower_A()), "P(D)": (PD, k.upper_D())})
    terms = [
        fh(PB) + _phi(phi, fh(inst.C)),
        _phi(phi, f_A(inst.A)) - e_A(PA) + k.upper_D()(PD),
    ]
    return terms, ("f(P(B))+P(f(C))+h(P(B))+P(h(C))",
                   "P(f(A))+f(P(D))-P(f(m-A))-e(m-P(A))-f(P(D)-M)-e(P(D)-M)")


def _sq_multi_a(k, inst, family):
    fh = k.f + k.h
    f_A, f_D, e_A, e_D = _mapped_parts(k)
    A, B, C, D = _columns(inst)
    SA, SB, SC, SD = (_sum(family, X) for X in (A, B, C, D))
    terms = [
        fh(SB) + fh(SC),
        _sum(family, [f_A(X) for X in A]) - e_A(SA) + _sum(family, [f_D(X) for X in D]) - e_D(SD),
    ]
    return terms, ("f(sum P_i(B_i))+f(sum P_i(C_i))+h(sum P_i(B_i))+h(sum P_i(C_i))",
                   "sum P_i(f(A_i)-f(m-A_i))-e(m-sum P_i(A_i))+sum P_i(f(D_i)-f(D_i-M))-e(sum P_i(D_i)-M)")


def _sq_multi_b(k, inst, family):
    fh = k.f + k.h
    _, f_D, _, e_D = _mapped_parts(k)
    A, B, C, D = _columns(inst)
    SA, SC, SD = _sum(family, A), _sum(family, C), _sum(family, D)
    terms = [
        _sum(family, [fh(X) for X in B]) + fh(SC),
        k.lower_A()(SA) + _sum(family, [f_D(X) for X in D]) - e_D(SD),
    ]
    return terms, ("sum P_i(f(B_i)+h(B_i))+f(sum P_i(C_i))+h(sum P_i(C_i))",
                   "f(sum P_i(A_i))-f(m-sum P_i(A_i))-e(m-sum P_i(A_i))+sum P_i(f(D_i)-f(D_i-M))-e(sum P_i(D_i)-M)")


def _sq_mercer(k, inst, family):
    SB = _sum(family, inst.B_list)
    # h(M+m-t) = h(t)
    w = _reflect(k.f, k) + k.h
    f0 = k.f_desc(0.0)
    terms = [
        w(SB) + _sum(family, [k.h(X) for X in inst.B_list]),
        (k.fm + k.fM - 2.0 * f0) - _sum(family, [k.f(X) for X in inst.B_list]),
    ]
    return terms, ("f(M+m-sum P_i(B_i))+sum P_i(h(B_i))+h(sum P_i(B_i))", "f(m)+f(M)-sum P_i(f(B_i))-2f(0)")


_BUILDERS = {
    "JM-BASE": _jm_base,
    "MOS-BASE": _mos_base,
    "LC-QUAD": _lc_quad,
    "LC-POW": _lc_quad,
    "LC-MID": _lc_mid,
    "LC-MAP": _lc_map,
    "LC-MAP-V2": _lc_map_v2,
    "LC-MAP-V3": _lc_map_v3,
    "LC-MULTI": _lc_multi,
    "LC-MERCER": _lc_mercer,
    "SQ-MAP": _sq_map,
    "SQ-POW": _sq_map,
    "SQ-MAP-V2": _sq_map_v2,
    "SQ-MAP-V3": _sq_map_v3,
    "SQ-MULTI-A": _sq_multi_a,
    "SQ-MULTI-B": _sq_multi_b,
    "SQ-MERCER": _sq_mercer,
    "SQ-QUAD": _sq_quad,
    "SQ-MID": _sq_mid,
}


def power_kf(p: float, m: float, M: float) -> float:

    """K_f(m, M) for f(t) = t^p in closed form: ((m+M) / (2 sqrt(mM)))^(2p)"""

    return math.exp(2.0 * p * (math.log(m + M) - math.log(2.0) - 0.5 * (math.log(m) + math.log(M))))


def build_chain(theorem: str, instance, f: functions.FunctionDescriptor, maps=None,
                tol: float = None, skip=frozenset()) -> ExpressionChain:

    """Check the theorem's hypotheses on the instance, then compile its chain.

    skip names hypotheses (relaxations) that are not checked."""

    info = theorem_info(theorem)
    if tol is None:
        tol = config.KV['DEFAULT_TOL']
    skip = frozenset(skip)
    unknown = skip - set(info.relaxations)
    if unknown:
        raise errors.UnknownRelaxation(f"{info.id} cannot relax {sorted(unknown)}")

    phi = _resolve_maps(info, instance, maps)
    _check_hypotheses(info, instance, f, tol, skip)

    kf = None
    if info.id == "LC-POW":
        kf = power_kf(f.params["p"], instance.m, instance.M)
    toolkit = _Toolkit(f, instance.m, instance.M, kf)

    terms, labels = _BUILDERS[info.id](toolkit, instance, phi)
    if len(terms) != info.terms:
        raise errors.ShapeMismatch(f"{info.id} produced {len(terms)} terms, expected {info.terms}")
    return ExpressionChain(tuple(terms), tuple(labels), info.id)


def evaluate_chain(chain: ExpressionChain, tol: float = None, digest: str = None, seed=None) -> ChainReport:

    """Loewner verdict for every adjacent pair of terms"""

    if tol is None:
        tol = config.KV['DEFAULT_TOL']

    links = []
    for lower, upper in zip(chain.terms, chain.terms[1:]):
        verdict = hermitian.loewner_leq(lower, upper, tol)
        difference = (upper - lower).frobenius_norm()
        scale = max(1.0, lower.frobenius_norm() + upper.frobenius_norm())
        links.append(LinkReport(
            verdict.min_eigenvalue_of_difference,
            verdict.max_eigenvalue_of_difference,
            difference,
            verdict.tolerance_used,
            verdict.leq,
            difference <= config.KV['EQUALITY_TOL'] * scale,
        ))

    passed = all(link.holds for link in links)
    if not passed:
        failing = [i + 1 for i, link in enumerate(links) if not link.holds]
        logging.debug(f"{chain.theorem} chain fails on link(s) {failing}")
    return ChainReport(chain.theorem, chain.labels, tuple(links), passed, tol, digest, seed)


def baseline_chain(chain: ExpressionChain) -> ExpressionChain:

    """Two-term chain of the first and last terms"""

    return ExpressionChain((chain.terms[0], chain.terms[-1]), (chain.labels[0], chain.labels[-1]), chain.theorem)


def _relation_for(info: TheoremInfo, f, m: float, M: float, stream) -> SumRelation:

    if info.relaxations != CONDITION_RELAXATIONS:
        return SumRelation.EqualSum
    allowed = [SumRelation.EqualSum]
    if f(m) <= f(M):
        allowed.append(SumRelation.SumLeq)
    if f(M) <= f(m):
        allowed.append(SumRelation.SumGeq)
    return allowed[int(stream.integers(0, len(allowed)))]


def family_size(map_spec: str) -> int:
    name, _, rest = map_spec.strip().partition(":")
    key, _, value = rest.partition("=")
    if name != "family" or key != "n":
        raise errors.ShapeMismatch(f"expected a family:n=<int> spec, got {map_spec!r}")
    try:
        return int(value)
    except ValueError:
        raise errors.ShapeMismatch(f"expected a family:n=<int> spec, got {map_spec!r}")


def sample_instance(theorem: str, f: functions.FunctionDescriptor, dim: int, m: float, M: float,
                    map_spec: str = "none", seed=0, relation: SumRelation = None) -> tuple:

    """Random (instance, maps) satisfying the theorem's hypotheses"""

    info = theorem_info(theorem)
    stream = seed if isinstance(seed, np.random.Generator) else rng.generator(seed)
    floor = forge.domain_floor(f.domain, m)
    nonneg = info.nonneg_A
    if relation is None:
        relation = _relation_for(info, f, m, M, stream)

    if info.instance == "quadruple":
        instance = forge.sample_quadruple(dim, m, M, relation, nonneg, stream, floor)
    elif info.instance == "midpoint":
        instance = forge.sample_midpoint(dim, m, M, nonneg, stream, floor)
    elif info.instance == "mercer":
        instance = forge.sample_mercer_family(family_size(map_spec), dim, m, M, stream)
    else:
        instance = forge.sample_multi_quadruple(family_size(map_spec), dim, m, M, nonneg, stream, floor, relation)

    phi = None
    if info.maps == "single":
        phi = maps.parse_map(map_spec, dim, rng.child_seed(stream))
        if not isinstance(phi, maps.PositiveUnitalMap):
            raise errors.ShapeMismatch(f"{info.id} needs a single map spec, got {map_spec!r}")
    return instance, phi
