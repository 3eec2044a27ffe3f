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

"""Positive linear maps on matrices: identity, pinching, compression and
mixed-unitary maps, plus families with sum Phi_i(I) = I"""

import logging
import math

from dataclasses import dataclass

import numpy as np

import lib.config as config
import lib.errors as errors
import lib.hermitian as hermitian
import lib.rng as rng

from lib.hermitian import HermitianMatrix

KINDS = ("identity", "pinching", "compression", "mixed")


class PositiveUnitalMap:

    """Base class; subclasses implement _apply on raw arrays"""

    kind = None
    input_dim = None
    output_dim = None

    def _apply(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, A: HermitianMatrix) -> HermitianMatrix:
        return apply_map(self, A)

    @property
    def spec(self) -> str:
        return self.kind


@dataclass(frozen=True)
class IdentityMap(PositiveUnitalMap):
    dim: int
    kind = "identity"

    @property
    def input_dim(self):
        return self.dim

    @property
    def output_dim(self):
        return self.dim

    def _apply(self, a):
        return a


@dataclass(frozen=True)
class PinchingMap(PositiveUnitalMap):

    """Zeroes every entry outside the diagonal blocks of a partition of the indices"""

    blocks: tuple
    kind = "pinching"

    def __post_init__(self):
        indices = sorted(i for block in self.blocks for i in block)
        if not indices or indices != list(range(len(indices))):
            raise errors.DimensionMismatch(f"blocks {self.blocks} do not partition 0..n-1")

    @property
    def input_dim(self):
        return sum(len(block) for block in self.blocks)

    @property
    def output_dim(self):
        return self.input_dim

    def _mask(self) -> np.ndarray:
        n = self.input_dim
        mask = np.zeros((n, n))
        for block in self.blocks:
            mask[np.ix_(block, block)] = 1.0
        return mask

    def _apply(self, a):
        return a * self._mask()

    @property
    def spec(self) -> str:
        return "pinching:blocks=" + "|".join(",".join(str(i) for i in block) for block in self.blocks)


@dataclass(frozen=True, eq=False)
class CompressionMap(PositiveUnitalMap):

    """A -> V* A V; unital exactly when V is an isometry"""

    V: np.ndarray
    kind = "compression"

    @property
    def input_dim(self):
        return self.V.shape[0]

    @property
    def output_dim(self):
        return self.V.shape[1]

    def _apply(self, a):
        return self.V.conj().T @ a @ self.V

    @property
    def spec(self) -> str:
        return f"compression:k={self.output_dim}"


@dataclass(frozen=True, eq=False)
class MixedUnitaryMap(PositiveUnitalMap):

    """A -> sum_j w_j U_j A U_j*"""

    weights: tuple
    unitaries: tuple
    kind = "mixed"

    @property
    def input_dim(self):
        return self.unitaries[0].shape[0]

    @property
    def output_dim(self):
        return self.input_dim

    def _apply(self, a):
        return sum(w * (u @ a @ u.conj().T) for w, u in zip(self.weights, self.unitaries))

    @property
    def spec(self) -> str:
        return f"mixed:count={len(self.weights)}"


@dataclass(frozen=True, eq=False)
class ScaledMap(PositiveUnitalMap):

    """Family member A -> weight * inner(A), with inner unital"""

    weight: float
    inner: PositiveUnitalMap

    @property
    def kind(self):
        return self.inner.kind

    @property
    def input_dim(self):
        return self.inner.input_dim

    @property
    def output_dim(self):
        return self.inner.output_dim

    def _apply(self, a):
        return self.weight * self.inner._apply(a)

    @property
    def spec(self) -> str:
        return self.inner.spec


@dataclass(frozen=True)
class MapFamily:
    maps: tuple

    def __post_init__(self):
        if not self.maps:
            raise errors.ShapeMismatch("a map family needs at least one map")
        dims = {phi.output_dim for phi in self.maps}
        if len(dims) != 1:
            raise errors.DimensionMismatch(f"family members have different output dimensions {sorted(dims)}")

    def __len__(self):
        return len(self.maps)

    @property
    def output_dim(self) -> int:
        return self.maps[0].output_dim

    @property
    def spec(self) -> str:
        return f"family:n={len(self.maps)}"


def apply_map(phi: PositiveUnitalMap, A: HermitianMatrix) -> HermitianMatrix:
    if A.dim != phi.input_dim:
        raise errors.DimensionMismatch(f"{phi.spec} expects dimension {phi.input_dim}, got {A.dim}")
    return HermitianMatrix._wrap(phi._apply(A.entries))


def apply_family(family: MapFamily, matrices) -> HermitianMatrix:

    """sum_i Phi_i(X_i)"""

    matrices = list(matrices)
    if len(matrices) != len(family):
        raise errors.ShapeMismatch(f"family of {len(family)} maps applied to {len(matrices)} matrices")
    total = apply_map(family.maps[0], matrices[0])
    for phi, X in zip(family.maps[1:], matrices[1:]):
        total = total + apply_map(phi, X)
    return total


@dataclass(frozen=True)
class MapReport:
    passed: bool
    unital_deviation: float
    linearity_deviation: float
    positivity_deviation: float
    samples: int


def _check_samples(maps, samples: int, seed: int) -> tuple:

    stream = rng.generator(seed, 1)
    linearity = 0.0
    positivity = 0.0

    for _ in range(samples):
        for phi in maps:
            n = phi.input_dim
            a = rng.random_hermitian(stream, n)
            b = rng.random_hermitian(stream, n)
            c = float(stream.normal())
            lhs = phi._apply(a + c * b)
            rhs = phi._apply(a) + c * phi._apply(b)
            scale = max(1.0, np.linalg.norm(a) + abs(c) * np.linalg.norm(b))
            linearity = max(linearity, float(np.linalg.norm(lhs - rhs)) / scale)

            p = rng.random_psd(stream, n)
            low, _ = hermitian.spectral_bounds(apply_map(phi, HermitianMatrix._wrap(p)))
            positivity = max(positivity, -low / max(1.0, float(np.linalg.norm(p))))

    return linearity, positivity


def verify_unital(phi: PositiveUnitalMap, samples: int = 100, seed: int = 0) -> MapReport:

    """Check Phi(I) = I, linearity and positivity on random samples"""

    if samples < 1:
        raise ValueError("samples must be at least 1")
    tol = config.KV['UNITAL_TOL']

    image = phi._apply(np.eye(phi.input_dim, dtype=np.complex128))
    unital = float(np.linalg.norm(image - np.eye(phi.output_dim)))
    linearity, positivity = _check_samples([phi], samples, seed)

    passed = unital <= tol and linearity <= tol and positivity <= tol
    if not passed:
        logging.info(f"{phi.spec} failed verification: unital {unital:.3e}, linearity {linearity:.3e}, positivity {positivity:.3e}")
    return MapReport(passed, unital, linearity, positivity, samples)


def family_unital_deviation(family: MapFamily) -> float:

    """||sum_i Phi_i(I) - I||_F"""

    total = sum(phi._apply(np.eye(phi.input_dim, dtype=np.complex128)) for phi in family.maps)
    return float(np.linalg.norm(total - np.eye(family.output_dim)))


def verify_family(family: MapFamily, samples: int = 100, seed: int = 0) -> MapReport:

    """Check sum_i Phi_i(I) = I, then linearity and positivity of every member"""

    tol = config.KV['UNITAL_TOL']
    unital = family_unital_deviation(family)
    linearity, positivity = _check_samples(family.maps, samples, seed)

    passed = unital <= tol and linearity <= tol and positivity <= tol
    return MapReport(passed, unital, linearity, positivity, samples)


def _sample_partition(stream: np.random.Generator, dim: int) -> tuple:

    """Random set partition of 0..dim-1 through a restricted growth string"""

    labels = []
    for _ in range(dim):
        labels.append(int(stream.integers(0, (max(labels) + 2) if labels else 1)))
    blocks = {}
    for index, label in enumerate(labels):
        blocks.setdefault(label, []).append(index)
    return tuple(tuple(block) for block in blocks.values())


def sample_map(kind: str, dim: int, seed: int, k: int = None, count: int = None,
               blocks: tuple = None) -> PositiveUnitalMap:

    """Deterministic-in-seed map of the given kind with input dimension dim"""

    if dim < 1:
        raise errors.DimensionMismatch(f"dimension must be positive, got {dim}")
    stream = rng.generator(seed, 0)

    if kind == "identity":
        return IdentityMap(dim)

    if kind == "pinching":
        return PinchingMap(tuple(tuple(b) for b in blocks) if blocks else _sample_partition(stream, dim))

    if kind == "compression":
        k = max(1, dim // 2) if k is None else k
        if not 1 <= k <= dim:
            raise errors.DimensionMismatch(f"compression to {k} needs 1 <= k <= {dim}")
        return CompressionMap(rng.random_isometry(stream, dim, k))

    if kind == "mixed":
        count = 2 if count is None else count
        if count < 1:
            raise errors.UnknownKind(f"mixed map needs a positive count, got {count}")
        weights = rng.flat_simplex(stream, count)
        unitaries = []
        for _ in range(count):
            h = HermitianMatrix._wrap(rng.random_hermitian(stream, dim))
            unitaries.append(np.array(hermitian.eigendecompose(h).vectors))
        return MixedUnitaryMap(tuple(float(w) for w in weights), tuple(unitaries))

    raise errors.UnknownKind(f"unknown map kind {kind!r}")


def sample_map_family(n: int, dim: int, seed: int, weights=None) -> MapFamily:

    """n maps A -> w_i Psi_i(A) with Psi_i unital and the w_i on the flat simplex"""

    if n < 1:
        raise errors.ShapeMismatch(f"family size must be positive, got {n}")
    stream = rng.generator(seed, 2)

    if weights is None:
        weights = rng.flat_simplex(stream, n)
    weights = np.asarray(weights, dtype=float)
    if len(weights) != n or np.any(weights <= 0):
        raise errors.ShapeMismatch(f"need {n} positive weights, got {weights.tolist()}")
    weights = weights / weights.sum()

    members = []
    for w in weights:
        kind = ("identity", "pinching", "mixed")[int(stream.integers(0, 3))]
        members.append(ScaledMap(float(w), sample_map(kind, dim, rng.child_seed(stream))))

    return MapFamily(tuple(members))


def _parse_params(spec: str) -> tuple:
    name, _, rest = spec.strip().partition(":")
    params = {}
    if rest:
        key, sep, value = rest.partition("=")
        if not sep:
            raise errors.UnknownKind(f"malformed map spec {spec!r}")
        params[key] = value
    return name, params


def _int_param(params: dict, key: str, spec: str) -> int:
    try:
        return int(params[key])
    except (KeyError, ValueError):
        raise errors.UnknownKind(f"map spec {spec!r} needs an integer {key}")


def parse_map(spec: str, dim: int, seed: int = 0):

    """Build a map (or MapFamily for 'family:n=') from a CLI spec; 'none' gives None"""

    name, params = _parse_params(spec)

    if name == "none" and not params:
        return None
    if name == "identity" and not params:
        return sample_map("identity", dim, seed)
    if name == "pinching" and set(params) <= {"blocks"}:
        blocks = None
        if "blocks" in params:
            try:
                blocks = tuple(tuple(int(i) for i in part.split(",")) for part in params["blocks"].split("|"))
            except ValueError:
                raise errors.UnknownKind(f"malformed pinching blocks in {spec!r}")
            if sum(len(b) for b in blocks) != dim:
                raise errors.DimensionMismatch(f"pinching blocks {blocks} do not cover dimension {dim}")
        return sample_map("pinching", dim, seed, blocks=blocks)
    if name == "compression" and set(params) <= {"k"}:
        return sample_map("compression", dim, seed, k=_int_param(params, "k", spec) if params else None)
    if name == "mixed" and set(params) <= {"count"}:
        return sample_map("mixed", dim, seed, count=_int_param(params, "count", spec) if params else None)
    if name == "family" and set(params) == {"n"}:
        return sample_map_family(_int_param(params, "n", spec), dim, seed)

    raise errors.UnknownKind(f"unknown map spec {spec!r}")


def map_shape(spec: str) -> str:

    """'none', 'single' or 'family' for a map spec string"""

    name = spec.strip().partition(":")[0]
    if name == "none":
        return "none"
    if name == "family":
        return "family"
    if name in KINDS:
        return "single"
    raise errors.UnknownKind(f"unknown map spec {spec!r}")
