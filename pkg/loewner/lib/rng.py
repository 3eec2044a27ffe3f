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

"""Seeded random streams and random matrix helpers.

Streams are Philox (counter based) generators keyed by a seed path, so a
campaign can hand instance (cell, i) its own stream regardless of how the
work is split across processes."""

import numpy as np
import scipy.linalg


def generator(seed: int, *path: int) -> np.random.Generator:

    """Independent stream for (seed, *path)"""

    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, path)])))


def child_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63 - 1))


def gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = gaussian(rng, dim, dim)
    return (g + g.conj().T) / 2.0


def random_psd(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:

    """G G* rescaled so its largest eigenvalue is at most scale"""

    g = gaussian(rng, dim, dim)
    p = g @ g.conj().T
    top = np.linalg.norm(p, 2)
    if top == 0.0:
        return p
    return p * (scale * rng.uniform() / top)


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:

    """Haar-random unitary from the QR decomposition of a Ginibre matrix"""

    q, r = scipy.linalg.qr(gaussian(rng, dim, dim))
    d = np.diag(r)
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phases


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:

    """rows x cols matrix with orthonormal columns (orthonormalized Gaussian columns)"""

    q, _ = scipy.linalg.qr(gaussian(rng, rows, cols), mode="economic")
    return q


def flat_simplex(rng: np.random.Generator, n: int) -> np.ndarray:
    w = rng.dirichlet(np.ones(n))
    return w / w.sum()
