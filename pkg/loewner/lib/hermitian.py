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

"""Dense Hermitian matrices, a cyclic Jacobi eigensolver, functional calculus
and Loewner order comparison.

Every operator term the chain engine builds is a HermitianMatrix. Values are
immutable once constructed; all helpers here return new matrices.
"""

import enum
import logging
import math

from dataclasses import dataclass

import numpy as np

import lib.config as config
import lib.errors as errors


class HermitianMatrix:

    """Dense complex Hermitian matrix

    Input is accepted when ||A - A*||_F <= SYMMETRIZE_TOL * ||A||_F and stored
    as (A + A*) / 2, which is exactly Hermitian."""

    __slots__ = ("_data", "_eig")

    def __init__(self, entries, check: bool = True):

        a = np.array(entries, dtype=np.complex128)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise errors.DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")

        if not np.all(np.isfinite(a)):
            raise errors.NotHermitian("matrix has non-finite entries")

        if check:
            asym = np.linalg.norm(a - a.conj().T)
            if asym > config.KV['SYMMETRIZE_TOL'] * np.linalg.norm(a):
                raise errors.NotHermitian(f"asymmetry norm {asym:.3e} exceeds tolerance")

        a = (a + a.conj().T) / 2.0
        a.setflags(write=False)
        self._data = a
        self._eig = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "HermitianMatrix":

        """Symmetrize the output of an internal computation without the asymmetry check"""

        return cls(a, check=False)

    @classmethod
    def identity(cls, dim: int) -> "HermitianMatrix":
        return cls._wrap(np.eye(dim))

    @classmethod
    def scalar(cls, c: float, dim: int) -> "HermitianMatrix":
        return cls._wrap(c * np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> "HermitianMatrix":
        return cls._wrap(np.zeros((dim, dim)))

    @classmethod
    def diag(cls, values) -> "HermitianMatrix":
        return cls._wrap(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    @property
    def entries(self) -> np.ndarray:

        """Read-only view of the entries"""

        return self._data

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self._data))

    def is_real(self) -> bool:
        return not np.any(self._data.imag)

    def _same_dim(self, other: "HermitianMatrix"):
        if self.dim != other.dim:
            raise errors.DimensionMismatch(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, HermitianMatrix):
            self._same_dim(other)
            return HermitianMatrix._wrap(self._data + other._data)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return HermitianMatrix._wrap(self._data + float(other) * np.eye(self.dim))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HermitianMatrix):
            self._same_dim(other)
            return HermitianMatrix._wrap(self._data - other._data)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return HermitianMatrix._wrap(self._data - float(other) * np.eye(self.dim))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return HermitianMatrix._wrap(float(other) * np.eye(self.dim) - self._data)
        return NotImplemented

    def __neg__(self):
        return HermitianMatrix._wrap(-self._data)

    def __mul__(self, c):
        # real scalars only, a complex factor would break hermiticity
        if isinstance(c, (int, float, np.floating, np.integer)):
            return HermitianMatrix._wrap(float(c) * self._data)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, float, np.floating, np.integer)):
            return HermitianMatrix._wrap(self._data / float(c))
        return NotImplemented

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim}, entries={np.array2string(self._data, precision=6)})"


class Relation(enum.Enum):
    LessOrEqual = "LessOrEqual"
    GreaterOrEqual = "GreaterOrEqual"
    Equal = "Equal"
    Incomparable = "Incomparable"


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class LoewnerVerdict:
    relation: Relation
    min_eigenvalue_of_difference: float
    max_eigenvalue_of_difference: float
    tolerance_used: float

    @property
    def leq(self) -> bool:
        return self.relation in (Relation.LessOrEqual, Relation.Equal)

    @property
    def geq(self) -> bool:
        return self.relation in (Relation.GreaterOrEqual, Relation.Equal)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(a: np.ndarray, tol: float, sweeps: int) -> tuple:

    """Cyclic Jacobi for a complex Hermitian matrix.

    Each rotation first removes the phase of a[p, q] with diag(1, conj(e)) and
    then applies the real symmetric rotation that zeroes the pair."""

    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * np.linalg.norm(a)

    for sweep in range(sweeps + 1):

        off = _off_norm(a)
        if off <= threshold:
            logging.debug(f"jacobi converged, n={n}, sweeps={sweep}, off={off:.3e}")
            return np.real(np.diag(a)).copy(), v

        if sweep == sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):

                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue

                e = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ec = e.conjugate()

                # columns: A <- A G, G = [[c, s], [-s conj(e), c conj(e)]]
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * ec * cq
                a[:, q] = s * cp + c * ec * cq

                # rows: A <- G* A
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * e * rq
                a[q, :] = s * rp + c * e * rq

                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * ec * vq
                v[:, q] = s * vp + c * ec * vq

    raise errors.NonConvergence(f"jacobi exceeded {sweeps} sweeps (off-diagonal norm {off:.3e})")


def eigendecompose(A: HermitianMatrix) -> EigenDecomposition:

    """Eigenvalues ascending, eigenvectors as orthonormal columns"""

    if A._eig is not None:
        return A._eig

    values, vectors = _jacobi(A.entries, config.KV['JACOBI_TOL'], config.KV['JACOBI_SWEEPS'])

    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    values.setflags(write=False)
    vectors.setflags(write=False)

    decomposition = EigenDecomposition(values, vectors)
    A._eig = decomposition
    return decomposition


def _clamp_to_domain(values: np.ndarray, domain, scale: float, name: str) -> np.ndarray:

    tol = config.KV['CLAMP_TOL'] * max(1.0, scale)
    values = values.copy()

    for i, lam in enumerate(values):
        if domain.lo is not None and lam < domain.lo:
            if domain.lo - lam > tol:
                raise errors.DomainViolation(f"eigenvalue {lam!r} below the domain of {name}", lam)
            values[i] = domain.lo
        if domain.hi is not None and lam > domain.hi:
            if lam - domain.hi > tol:
                raise errors.DomainViolation(f"eigenvalue {lam!r} above the domain of {name}", lam)
            values[i] = domain.hi
        if not domain.contains(values[i]):
            raise errors.DomainViolation(f"eigenvalue {lam!r} on an open end of the domain of {name}", lam)

    return values


def apply_callable(A: HermitianMatrix, fn, domain=None, name: str = "function") -> HermitianMatrix:

    """Functional calculus with a vectorised scalar callable"""

    decomposition = eigendecompose(A)
    values = decomposition.eigenvalues
    if domain is not None:
        values = _clamp_to_domain(values, domain, A.frobenius_norm(), name)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        mapped = np.asarray(fn(values), dtype=float)

    if mapped.shape != values.shape:
        mapped = np.broadcast_to(mapped, values.shape)
    bad = ~np.isfinite(mapped)
    if np.any(bad):
        lam = float(values[np.argmax(bad)])
        raise errors.DomainViolation(f"{name} is not finite at eigenvalue {lam!r}", lam)

    v = decomposition.vectors
    return HermitianMatrix._wrap((v * mapped) @ v.conj().T)


def apply_scalar_function(A: HermitianMatrix, f) -> HermitianMatrix:

    """f(A) = V diag(f(lambda)) V*, checked against f's declared domain"""

    return apply_callable(A, f.eval, f.domain, f.id)


def positive_part(A: HermitianMatrix) -> HermitianMatrix:
    return apply_callable(A, lambda t: np.maximum(t, 0.0), name="max(t,0)")


def spectral_bounds(A: HermitianMatrix) -> tuple:
    values = eigendecompose(A).eigenvalues
    return float(values[0]), float(values[-1])


def loewner_leq(A: HermitianMatrix, B: HermitianMatrix, tol: float = None) -> LoewnerVerdict:

    """Compare A and B through the spectrum of B - A.

    The tolerance is relative: tol * max(1, ||A||_F + ||B||_F)."""

    if A.dim != B.dim:
        raise errors.DimensionMismatch(f"cannot compare dimension {A.dim} with {B.dim}")
    if tol is None:
        tol = config.KV['DEFAULT_TOL']
    if tol < 0:
        raise ValueError("tolerance must be non-negative")

    effective = tol * max(1.0, A.frobenius_norm() + B.frobenius_norm())
    lo, hi = spectral_bounds(B - A)

    leq = lo >= -effective
    geq = hi <= effective
    if leq and geq:
        relation = Relation.Equal
    elif leq:
        relation = Relation.LessOrEqual
    elif geq:
        relation = Relation.GreaterOrEqual
    else:
        relation = Relation.Incomparable

    return LoewnerVerdict(relation, lo, hi, effective)


def is_psd(A: HermitianMatrix, tol: float = None) -> bool:
    return loewner_leq(HermitianMatrix.zeros(A.dim), A, tol).leq
