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

"""Random operator tuples that satisfy the spectral and sum hypotheses of
the chain theorems"""

import enum
import logging

from dataclasses import dataclass

import numpy as np

import lib.config as config
import lib.errors as errors
import lib.hermitian as hermitian
import lib.maps as maps
import lib.rng as rng

from lib.hermitian import HermitianMatrix


class SumRelation(enum.Enum):
    EqualSum = "EqualSum"
    SumLeq = "SumLeq"    # B + C <= A + D
    SumGeq = "SumGeq"    # A + D <= B + C


@dataclass(frozen=True)
class QuadrupleInstance:
    A: HermitianMatrix
    B: HermitianMatrix
    C: HermitianMatrix
    D: HermitianMatrix
    m: float
    M: float
    relation: SumRelation = SumRelation.EqualSum
    require_nonnegative_A: bool = False

    @property
    def dim(self) -> int:
        return self.A.dim


@dataclass(frozen=True)
class MercerInstance:
    B_list: tuple
    m: float
    M: float
    family: maps.MapFamily

    @property
    def dim(self) -> int:
        return self.B_list[0].dim

    @property
    def C_list(self) -> tuple:
        return tuple((self.M + self.m) - B for B in self.B_list)


@dataclass(frozen=True)
class MidpointInstance:
    A: HermitianMatrix
    D: HermitianMatrix
    m: float
    M: float

    @property
    def dim(self) -> int:
        return self.A.dim

    @property
    def midpoint(self) -> HermitianMatrix:
        return (self.A + self.D) * 0.5


@dataclass(frozen=True)
class MultiQuadrupleInstance:
    quadruples: tuple
    family: maps.MapFamily

    @property
    def m(self) -> float:
        return self.quadruples[0].m

    @property
    def M(self) -> float:
        return self.quadruples[0].M

    @property
    def dim(self) -> int:
        return self.quadruples[0].dim


def _stream(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return rng.generator(seed)


def _check_interval(m: float, M: float):
    if not M > m:
        raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")


def domain_floor(domain, m: float) -> float:

    """Lower bound for spec(A) keeping f(A) inside the domain: a closed lower end
    is used as is, an open one at lo + 0.05 (m - lo)"""

    if domain.lo is None:
        return None
    if domain.lo_open:
        return domain.lo + 0.05 * (m - domain.lo)
    return domain.lo


def _floor(m: float, nonneg_A: bool, floor: float) -> float:

    if nonneg_A:
        if not m > 0:
            raise ValueError(f"non-negative A needs m > 0, got m={m!r}")
        floor = 0.0 if floor is None else max(floor, 0.0)
    if floor is not None and floor > m:
        raise ValueError(f"floor {floor!r} lies above m={m!r}")
    return floor


def sample_sandwiched_matrix(dim: int, lo: float, hi: float, seed=0) -> HermitianMatrix:

    """Eigenvalues uniform in [lo, hi], conjugated by a Haar unitary"""

    if lo > hi:
        raise errors.DegenerateInterval(f"need lo <= hi, got [{lo!r}, {hi!r}]")
    if lo == hi:
        return HermitianMatrix.scalar(lo, dim)

    stream = _stream(seed)
    values = stream.uniform(lo, hi, size=dim)
    u = rng.haar_unitary(stream, dim)
    X = HermitianMatrix._wrap((u * values) @ u.conj().T)

    eps = 1e-12 * max(1.0, abs(lo), abs(hi))
    low, high = hermitian.spectral_bounds(X)
    if low < lo - eps or high > hi + eps:
        raise errors.NonConvergence(f"sandwiched sample left [{lo!r}, {hi!r}]: ({low!r}, {high!r})")
    return X


def _psd(stream, dim: int, scale: float) -> HermitianMatrix:
    if scale <= 0:
        return HermitianMatrix.zeros(dim)
    return HermitianMatrix._wrap(rng.random_psd(stream, dim, scale))


def complete_equal_sum(B: HermitianMatrix, C: HermitianMatrix, m: float, M: float,
                       Q: HermitianMatrix = None) -> tuple:

    """A = mI - P0 - Q and D = B + C - A with P0 = ((M+m)I - B - C)_+.

    P0 >= (M+m)I - (B+C) forces D = B + C - mI + P0 + Q >= MI."""

    S = B + C
    P0 = hermitian.positive_part((M + m) - S)
    A = m - P0
    if Q is not None:
        A = A - Q
    return A, S - A


def _sum_leq(B, C, m, M, q_low, q_high, stream) -> tuple:

    # B + C <= A + D: A = mI - Q1, D = MI + (B + C - A - MI)_+ + Q2
    A = m - _psd(stream, B.dim, q_low)
    D = M + hermitian.positive_part(B + C - A - M) + _psd(stream, B.dim, q_high)
    return A, D


def _sum_geq(B, C, m, M, q_low, q_high, stream) -> tuple:

    # A + D <= B + C: D = MI + Q2, A = min(B + C - D, m) - Q1
    D = M + _psd(stream, B.dim, q_high)
    X = B + C - D
    A = X - hermitian.positive_part(X - m) - _psd(stream, B.dim, q_low)
    return A, D


def sample_quadruple(dim: int, m: float, M: float, relation=SumRelation.EqualSum, nonneg_A: bool = False,
                     seed=0, floor: float = None, q_scale: float = None) -> QuadrupleInstance:

    """A <= m <= B, C <= M <= D with the requested sum relation"""

    _check_interval(m, M)
    relation = SumRelation(relation)
    floor = _floor(m, nonneg_A, floor)
    if q_scale is None:
        q_scale = config.KV['Q_SCALE_FRACTION'] * (M - m)

    stream = _stream(seed)
    retries = config.KV['MAX_RETRIES']

    for attempt in range(retries):

        B = sample_sandwiched_matrix(dim, m, M, stream)
        C = sample_sandwiched_matrix(dim, m, M, stream)
        q_low = q_scale if floor is None else min(q_scale, m - floor)

        if relation is SumRelation.EqualSum:
            A0, _ = complete_equal_sum(B, C, m, M)
            if floor is not None:
                headroom = hermitian.spectral_bounds(A0)[0] - floor
                if headroom < 0:
                    logging.debug(f"attempt {attempt}: lambda_min(A) below floor {floor!r}, resampling")
                    continue
                q_low = min(q_scale, headroom)
            A, D = complete_equal_sum(B, C, m, M, _psd(stream, dim, q_low))
        elif relation is SumRelation.SumLeq:
            A, D = _sum_leq(B, C, m, M, q_low, q_scale, stream)
        else:
            A, D = _sum_geq(B, C, m, M, q_low, q_scale, stream)

        instance = QuadrupleInstance(A, B, C, D, float(m), float(M), relation, bool(nonneg_A))
        violations = validate_instance(instance, floor=floor)
        if not violations:
            return instance
        logging.debug(f"attempt {attempt}: rejected quadruple, {violations}")

    raise errors.ExhaustedRetries(f"no {relation.value} quadruple for m={m!r}, M={M!r}, dim={dim} "
                                  f"after {retries} attempts")


def sample_mercer_family(n: int, dim: int, m: float, M: float, seed=0) -> MercerInstance:
    _check_interval(m, M)
    if n < 1:
        raise errors.ShapeMismatch(f"need at least one operator, got n={n}")
    stream = _stream(seed)
    B_list = tuple(sample_sandwiched_matrix(dim, m, M, stream) for _ in range(n))
    family = maps.sample_map_family(n, dim, rng.child_seed(stream))
    return MercerInstance(B_list, float(m), float(M), family)


def sample_midpoint(dim: int, m: float, M: float, nonneg_A: bool = False, seed=0,
                    floor: float = None, q_scale: float = None) -> MidpointInstance:

    """(A, D) in Omega: A <= m <= (A+D)/2 <= M <= D"""

    _check_interval(m, M)
    floor = _floor(m, nonneg_A, floor)
    if q_scale is None:
        q_scale = config.KV['Q_SCALE_FRACTION'] * (M - m)
    stream = _stream(seed)
    retries = config.KV['MAX_RETRIES']

    for attempt in range(retries):
        # A <= min(m, 2X - M) keeps D = 2X - A above M
        X = sample_sandwiched_matrix(dim, m, M, stream)
        Y = 2.0 * X - M
        A0 = Y - hermitian.positive_part(Y - m)
        q_low = q_scale
        if floor is not None:
            headroom = hermitian.spectral_bounds(A0)[0] - floor
            if headroom < 0:
                continue
            q_low = min(q_scale, headroom)
        A = A0 - _psd(stream, dim, q_low)
        instance = MidpointInstance(A, 2.0 * X - A, float(m), float(M))
        violations = validate_instance(instance, floor=floor)
        if not violations:
            return instance
        logging.debug(f"attempt {attempt}: rejected midpoint pair, {violations}")

    raise errors.ExhaustedRetries(f"no midpoint pair for m={m!r}, M={M!r}, dim={dim} after {retries} attempts")


def sample_multi_quadruple(n: int, dim: int, m: float, M: float, nonneg_A: bool = False, seed=0,
                           floor: float = None, relation=SumRelation.EqualSum) -> MultiQuadrupleInstance:
    if n < 1:
        raise errors.ShapeMismatch(f"need at least one quadruple, got n={n}")
    stream = _stream(seed)
    quadruples = tuple(sample_quadruple(dim, m, M, relation, nonneg_A, stream, floor)
                       for _ in range(n))
    family = maps.sample_map_family(n, dim, rng.child_seed(stream))
    return MultiQuadrupleInstance(quadruples, family)


def as_midpoint_quadruple(instance: MidpointInstance) -> QuadrupleInstance:
    X = instance.midpoint
    return QuadrupleInstance(instance.A, X, X, instance.D, instance.m, instance.M, SumRelation.EqualSum)


def _bounds_violations(name: str, X: HermitianMatrix, lo: float, hi: float, eps: float) -> list:

    violations = []
    low, high = hermitian.spectral_bounds(X)
    if lo is not None and low < lo - eps:
        violations.append(f"lambda_min({name}) < {lo!r} (got {low!r})")
    if hi is not None and high > hi + eps:
        violations.append(f"lambda_max({name}) > {hi!r} (got {high!r})")
    return violations


def _quadruple_violations(inst: QuadrupleInstance, tol: float, floor: float, prefix: str = "") -> list:

    violations = []
    if not inst.M > inst.m:
        return [f"{prefix}m >= M"]
    dims = {X.dim for X in (inst.A, inst.B, inst.C, inst.D)}
    if len(dims) != 1:
        return [f"{prefix}dimension mismatch {sorted(dims)}"]

    eps = tol * max(1.0, abs(inst.m), abs(inst.M))
    low_A, high_A = hermitian.spectral_bounds(inst.A)
    if high_A > inst.m + eps:
        violations.append(f"{prefix}lambda_max(A) > m (got {high_A!r} > {inst.m!r})")
    for name, X in (("B", inst.B), ("C", inst.C)):
        violations += [prefix + v for v in _bounds_violations(name, X, inst.m, inst.M, eps)]
    low_D, _ = hermitian.spectral_bounds(inst.D)
    if low_D < inst.M - eps:
        violations.append(f"{prefix}lambda_min(D) < M (got {low_D!r} < {inst.M!r})")
    if inst.require_nonnegative_A and low_A < -eps:
        violations.append(f"{prefix}lambda_min(A) < 0 (got {low_A!r})")
    if floor is not None and low_A < floor - eps:
        violations.append(f"{prefix}lambda_min(A) < floor (got {low_A!r} < {floor!r})")

    left, right = inst.B + inst.C, inst.A + inst.D
    verdict = hermitian.loewner_leq(left, right, tol)
    if inst.relation is SumRelation.EqualSum and verdict.relation is not hermitian.Relation.Equal:
        violations.append(f"{prefix}A + D != B + C (difference eigenvalues "
                          f"[{verdict.min_eigenvalue_of_difference!r}, {verdict.max_eigenvalue_of_difference!r}])")
    elif inst.relation is SumRelation.SumLeq and not verdict.leq:
        violations.append(f"{prefix}B + C <= A + D fails (min eigenvalue {verdict.min_eigenvalue_of_difference!r})")
    elif inst.relation is SumRelation.SumGeq and not verdict.geq:
        violations.append(f"{prefix}A + D <= B + C fails (max eigenvalue {verdict.max_eigenvalue_of_difference!r})")

    return violations


def _family_violations(family: maps.MapFamily, n: int, dim: int, tol: float) -> list:

    violations = []
    if len(family) != n:
        violations.append(f"family has {len(family)} maps for {n} operators")
    if any(phi.input_dim != dim for phi in family.maps):
        violations.append(f"family input dimension differs from {dim}")
        return violations
    deviation = maps.family_unital_deviation(family)
    if deviation > tol:
        violations.append(f"sum Phi_i(I) != I (deviation {deviation!r})")
    return violations


def validate_instance(inst, tol: float = 1e-10, floor: float = None) -> list:

    """Every invariant of the instance type; an empty list means valid"""

    if isinstance(inst, QuadrupleInstance):
        return _quadruple_violations(inst, tol, floor)

    if isinstance(inst, MidpointInstance):
        if not inst.M > inst.m:
            return ["m >= M"]
        eps = tol * max(1.0, abs(inst.m), abs(inst.M))
        violations = _bounds_violations("A", inst.A, None, inst.m, eps)
        violations += _bounds_violations("(A+D)/2", inst.midpoint, inst.m, inst.M, eps)
        violations += _bounds_violations("D", inst.D, inst.M, None, eps)
        if floor is not None:
            violations += _bounds_violations("A", inst.A, floor, None, eps)
        return violations

    if isinstance(inst, MercerInstance):
        if not inst.M > inst.m:
            return ["m >= M"]
        eps = tol * max(1.0, abs(inst.m), abs(inst.M))
        violations = []
        for i, B in enumerate(inst.B_list, 1):
            violations += _bounds_violations(f"B_{i}", B, inst.m, inst.M, eps)
        return violations + _family_violations(inst.family, len(inst.B_list), inst.dim, tol)

    if isinstance(inst, MultiQuadrupleInstance):
        violations = []
        for i, quadruple in enumerate(inst.quadruples, 1):
            if (quadruple.m, quadruple.M) != (inst.m, inst.M):
                violations.append(f"quadruple {i}: (m, M) differs from quadruple 1")
            violations += _quadruple_violations(quadruple, tol, floor, f"quadruple {i}: ")
        return violations + _family_violations(inst.family, len(inst.quadruples), inst.dim, tol)

    raise errors.ShapeMismatch(f"not an instance: {type(inst).__name__}")
