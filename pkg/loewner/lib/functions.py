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

"""Scalar functions with declared convexity classes, the interpolation
constants K_f, r(alpha) and t~, and scalar checkers for the log-convex and
superquadratic inequalities"""

import enum
import logging
import math

from dataclasses import dataclass, field

import numpy as np

import lib.config as config
import lib.errors as errors


class FunctionClass(enum.Enum):
    LogConvex = "LogConvex"
    Convex = "Convex"
    Superquadratic = "Superquadratic"
    NonNegative = "NonNegative"


@dataclass(frozen=True)
class Interval:

    """Real interval; None marks an infinite end"""

    lo: float = None
    hi: float = None
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, t: float) -> bool:
        if self.lo is not None:
            if t < self.lo or (self.lo_open and t == self.lo):
                return False
        if self.hi is not None:
            if t > self.hi or (self.hi_open and t == self.hi):
                return False
        return True

    def intersect(self, other: "Interval") -> "Interval":

        lo, lo_open = self.lo, self.lo_open
        if other.lo is not None and (lo is None or other.lo > lo or (other.lo == lo and other.lo_open)):
            lo, lo_open = other.lo, other.lo_open

        hi, hi_open = self.hi, self.hi_open
        if other.hi is not None and (hi is None or other.hi < hi or (other.hi == hi and other.hi_open)):
            hi, hi_open = other.hi, other.hi_open

        return Interval(lo, hi, lo_open, hi_open)

    def __str__(self):
        left = "(" if self.lo is None or self.lo_open else "["
        right = ")" if self.hi is None or self.hi_open else "]"
        lo = "-inf" if self.lo is None else repr(self.lo)
        hi = "inf" if self.hi is None else repr(self.hi)
        return f"{left}{lo}, {hi}{right}"


REAL_LINE = Interval()
HALF_LINE = Interval(0.0, None)
POSITIVE = Interval(0.0, None, lo_open=True)


@dataclass(frozen=True)
class FunctionDescriptor:
    id: str
    domain: Interval
    classes: frozenset
    eval: object = field(compare=False)
    params: dict = field(default_factory=dict, compare=False)

    def has(self, cls: FunctionClass) -> bool:
        return cls in self.classes

    def __call__(self, t: float) -> float:

        """Evaluate at a single point, checking the domain"""

        t = float(t)
        if not self.domain.contains(t):
            raise errors.DomainViolation(f"{t!r} is outside the domain {self.domain} of {self.id}", t)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            value = float(self.eval(np.float64(t)))
        if not math.isfinite(value):
            raise errors.DomainViolation(f"{self.id} is not finite at {t!r}", t)
        return value


@dataclass(frozen=True)
class InterpolationConstants:
    kf: float
    m: float
    M: float


def _exp(a: float) -> FunctionDescriptor:

    classes = {FunctionClass.LogConvex, FunctionClass.Convex, FunctionClass.NonNegative}
    spec = "exp" if a == 1.0 else f"exp:a={a!r}"
    return FunctionDescriptor(spec, REAL_LINE, frozenset(classes), lambda t: np.exp(a * t), {"a": a})


def _pow_eval(p: float):

    if float(p).is_integer() and p > 0:
        n = int(p)
        return lambda t: np.power(t, n)

    def power(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(p * np.log(np.where(t > 0, t, 1.0)))
        if p > 0:
            out = np.where(t == 0, 0.0, out)
        else:
            out = np.where(t == 0, np.inf, out)
        return np.where(t < 0, np.nan, out)

    return power


def _pow(p: float, spec: str = None) -> FunctionDescriptor:

    classes = set()
    if p <= 0:
        domain = POSITIVE
        classes |= {FunctionClass.LogConvex, FunctionClass.Convex, FunctionClass.NonNegative}
    else:
        domain = HALF_LINE
        classes.add(FunctionClass.NonNegative)
        if p >= 1:
            classes.add(FunctionClass.Convex)
        if p >= 2:
            classes.add(FunctionClass.Superquadratic)

    return FunctionDescriptor(spec or f"pow:p={p!r}", domain, frozenset(classes), _pow_eval(p), {"p": p})


def _const(c: float) -> FunctionDescriptor:

    classes = {FunctionClass.Convex}
    if c >= 0:
        classes.add(FunctionClass.NonNegative)
    if c > 0:
        classes.add(FunctionClass.LogConvex)
    if -2.0 <= c <= -1.0 or c == 0:
        classes.add(FunctionClass.Superquadratic)

    return FunctionDescriptor(f"const:c={c!r}", HALF_LINE, frozenset(classes),
                              lambda t: np.full(np.shape(t), c, dtype=float), {"c": c})


# id -> (allowed parameters, defaults, factory)
_REGISTRY = {
    "exp": ({"a"}, {"a": 1.0}, lambda kv: _exp(kv["a"])),
    "pow": ({"p"}, {}, lambda kv: _pow(kv["p"])),
    "recip": (set(), {}, lambda kv: _pow(-1.0, "recip")),
    "const": ({"c"}, {}, lambda kv: _const(kv["c"])),
}


def parse_function(spec: str) -> FunctionDescriptor:

    """Parse 'exp', 'exp:a=<real>', 'pow:p=<real>', 'recip' or 'const:c=<real>'"""

    if not isinstance(spec, str):
        raise errors.UnknownFunction(f"function spec must be a string, got {spec!r}")

    name, _, rest = spec.strip().partition(":")
    if name not in _REGISTRY:
        raise errors.UnknownFunction(f"unknown function id {name!r}")

    allowed, defaults, factory = _REGISTRY[name]
    kv = dict(defaults)
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep or key not in allowed:
                raise errors.UnknownFunction(f"unknown parameter {item!r} for {name}")
            try:
                kv[key] = float(value)
            except ValueError:
                raise errors.UnknownFunction(f"parameter {key} of {name} is not a real: {value!r}")
            if not math.isfinite(kv[key]):
                raise errors.UnknownFunction(f"parameter {key} of {name} must be finite")

    missing = allowed - kv.keys()
    if missing:
        raise errors.UnknownFunction(f"{name} requires parameter(s) {sorted(missing)}")

    return factory(kv)


def is_equal(lhs: float, rhs: float) -> bool:
    return abs(lhs - rhs) <= config.KV['EQUALITY_TOL'] * max(1.0, abs(lhs), abs(rhs))


def _scaled(tol: float, *values) -> float:
    return tol * max([1.0] + [abs(v) for v in values])


def kf_constant(f: FunctionDescriptor, x: float, y: float) -> float:

    """K_f(x, y) = f((x+y)/2)^2 / (f(x) f(y))"""

    if not f.has(FunctionClass.LogConvex):
        logging.warning(f"K_f requested for {f.id}, which is not declared log-convex")

    fx = f(x)
    fy = f(y)
    mid = f((x + y) / 2.0)
    if fx * fy == 0.0:
        raise errors.DivisionByZero(f"f({x!r}) f({y!r}) = 0 for {f.id}")

    return mid * mid / (fx * fy)


def r_alpha(alpha: float) -> float:
    return min(alpha, 1.0 - alpha)


def tilde_t(t, m: float, M: float):

    """1/2 - |t - (m+M)/2| / (M - m); accepts scalars or arrays"""

    if not M > m:
        raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")
    if isinstance(t, np.ndarray):
        return 0.5 - np.abs(t - (m + M) / 2.0) / (M - m)
    return 0.5 - abs(t - (m + M) / 2.0) / (M - m)


def interpolation_constants(f: FunctionDescriptor, m: float, M: float) -> InterpolationConstants:
    if not M > m:
        raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")
    return InterpolationConstants(kf_constant(f, m, M), m, M)


def interpolant(f: FunctionDescriptor, m: float, M: float, kf: float = None):

    """g(t) = K^t~ f(m)^((M-t)/(M-m)) f(M)^((t-m)/(M-m)), evaluated in log space"""

    if not M > m:
        raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")
    if kf is None:
        kf = kf_constant(f, m, M)

    log_k = math.log(kf)
    log_fm = math.log(f(m))
    log_fM = math.log(f(M))
    width = M - m

    def g(t):
        t = np.asarray(t, dtype=float)
        weight = 0.5 - np.abs(t - (m + M) / 2.0) / width
        return np.exp(weight * log_k + (M - t) / width * log_fm + (t - m) / width * log_fM)

    return g


def linear_bound(f: FunctionDescriptor, m: float, M: float):

    """L(t) = (M-t)/(M-m) f(m) + (t-m)/(M-m) f(M)"""

    if not M > m:
        raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")
    fm, fM, width = f(m), f(M), M - m

    def L(t):
        t = np.asarray(t, dtype=float)
        return (M - t) / width * fm + (t - m) / width * fM

    return L


def sq_correction(f: FunctionDescriptor, m: float, M: float):

    """h(t) = (M-t)/(M-m) f(t-m) + (t-m)/(M-m) f(M-t), meaningful on [m, M]"""

    if not M > m:
        raise errors.DegenerateInterval(f"need m < M, got m={m!r}, M={M!r}")
    width = M - m

    def h(t):
        t = np.asarray(t, dtype=float)
        return (M - t) / width * f.eval(t - m) + (t - m) / width * f.eval(M - t)

    return h


@dataclass(frozen=True)
class LinkCheck:
    holds: bool
    slack: float
    equality: bool


@dataclass(frozen=True)
class ChainCheckResult:
    values: tuple
    links: tuple
    reversed: bool

    @property
    def holds(self) -> bool:
        return all(link.holds for link in self.links)


def _link(lower: float, upper: float, tol: float) -> LinkCheck:
    slack = upper - lower
    return LinkCheck(slack >= -_scaled(tol, lower, upper), slack, is_equal(lower, upper))


def _check_chain(values: tuple, reverse: bool, tol: float) -> ChainCheckResult:
    ordered = values[::-1] if reverse else values
    links = tuple(_link(a, b, tol) for a, b in zip(ordered, ordered[1:]))
    return ChainCheckResult(values, links[::-1] if reverse else links, reverse)


def _combination_point(f: FunctionDescriptor, x: float, y: float, alpha: float) -> float:
    z = alpha * x + (1.0 - alpha) * y
    if not f.domain.contains(z):
        raise errors.DomainViolation(f"alpha x + (1-alpha) y = {z!r} is outside {f.domain}", z)
    return z


def check_logconvex_chain(f: FunctionDescriptor, x: float, y: float, alpha: float,
                          tol: float = 1e-12) -> ChainCheckResult:

    """f(ax+(1-a)y) <= K^r(a) f(x)^a f(y)^(1-a) <= a f(x) + (1-a) f(y),
    with both signs reversed when a is outside [0, 1]"""

    z = _combination_point(f, x, y, alpha)
    fx, fy = f(x), f(y)
    k = kf_constant(f, x, y)

    v1 = f(z)
    v2 = math.exp(r_alpha(alpha) * math.log(k) + alpha * math.log(fx) + (1.0 - alpha) * math.log(fy))
    v3 = alpha * fx + (1.0 - alpha) * fy

    return _check_chain((v1, v2, v3), not 0.0 <= alpha <= 1.0, tol)


def check_convexity(f: FunctionDescriptor, x: float, y: float, alpha: float,
                    tol: float = 1e-12) -> ChainCheckResult:

    """f(ax+(1-a)y) <= a f(x) + (1-a) f(y), reversed outside [0, 1]"""

    z = _combination_point(f, x, y, alpha)
    return _check_chain((f(z), alpha * f(x) + (1.0 - alpha) * f(y)), not 0.0 <= alpha <= 1.0, tol)


def check_young(a: float, b: float, alpha: float, tol: float = 1e-12) -> ChainCheckResult:

    """a^alpha b^(1-alpha) <= alpha a + (1-alpha) b for a, b > 0, reversed outside [0, 1]"""

    if not (a > 0 and b > 0):
        raise errors.DomainViolation(f"Young's inequality needs a, b > 0, got {a!r}, {b!r}")
    geometric = math.exp(alpha * math.log(a) + (1.0 - alpha) * math.log(b))
    return _check_chain((geometric, alpha * a + (1.0 - alpha) * b), not 0.0 <= alpha <= 1.0, tol)


@dataclass(frozen=True)
class SlackCheck:
    holds: bool
    slack: float


def check_superquadratic_characterization(f: FunctionDescriptor, x: float, y: float, alpha: float,
                                          tol: float = 1e-12) -> SlackCheck:

    """slack = a f(x) + (1-a) f(y) - a f((1-a)|x-y|) - (1-a) f(a|x-y|) - f(ax + (1-a)y)"""

    if x < 0 or y < 0:
        raise errors.DomainViolation(f"x and y must be non-negative, got {x!r}, {y!r}")
    if not 0.0 <= alpha <= 1.0:
        raise errors.DomainViolation(f"alpha must lie in [0, 1], got {alpha!r}", alpha)

    d = abs(x - y)
    rhs = alpha * f(x) + (1.0 - alpha) * f(y) - alpha * f((1.0 - alpha) * d) - (1.0 - alpha) * f(alpha * d)
    lhs = f(alpha * x + (1.0 - alpha) * y)
    slack = rhs - lhs

    return SlackCheck(slack >= -_scaled(tol, lhs, rhs), slack)


@dataclass(frozen=True)
class DefinitionCheck:
    holds: bool
    worst_slack: float
    worst_t: float
    c_s: float
    candidate: str = "derivative"


def check_superquadratic_definition(f: FunctionDescriptor, s: float, t_grid, tol: float = 1e-8) -> DefinitionCheck:

    """Spot-check f(t) - f(s) - f(|t-s|) >= c_s (t - s) over a grid.

    c_s is the central finite difference of f(t) - f(|t-s|) at t = s. A failure
    only says the inequality fails for this candidate c_s."""

    if s < 0 or any(t < 0 for t in t_grid):
        raise errors.DomainViolation(f"s and every t must be non-negative")

    step = config.KV['FD_STEP'] * max(1.0, s)

    def g(t):
        return f(t) - f(abs(t - s))

    if s - step >= 0:
        c_s = (g(s + step) - g(s - step)) / (2.0 * step)
    else:
        c_s = (g(s + step) - g(s)) / step

    fs = f(s)
    worst, worst_t, scale = math.inf, None, 1.0
    for t in t_grid:
        slack = f(t) - fs - f(abs(t - s)) - c_s * (t - s)
        if slack < worst:
            worst, worst_t = slack, t
        scale = max(scale, abs(f(t)))

    if worst_t is None:
        return DefinitionCheck(True, 0.0, None, c_s)

    holds = worst >= -tol * scale
    if not holds:
        logging.info(f"{f.id}: superquadratic definition fails with derivative candidate c_s={c_s:.6g} at t={worst_t}")
    return DefinitionCheck(holds, worst, worst_t, c_s)
