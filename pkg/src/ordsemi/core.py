"""Data model: intervals, tolerance policy, semigroups, dyadic exponents.

Elements are plain floats. The order is the ambient order of the reals
restricted to the carrier interval, so it never needs to be stored.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .errors import ClosureError, EvaluationError

INF = math.inf

# open endpoints are never sampled closer than this (relative to the span,
# or absolute for unbounded intervals)
CLIP = 1e-6
# half-lines are sampled as endpoint +/- exp(s) with s uniform in [-SHIFT, SHIFT]
SHIFT = 8.0


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if math.isinf(self.lo) and self.lo_closed or math.isinf(self.hi) and self.hi_closed:
            raise ValueError("closed infinite endpoint")
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("single-point interval must be closed at both ends")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse a literal such as ``(0, inf)`` or ``[-1, 1)``."""
        m = re.fullmatch(r"\s*([\[(])\s*([^,\s]+)\s*,\s*([^,\s\])]+)\s*([\])])\s*", text)
        if not m:
            raise ValueError(f"malformed interval literal {text!r}")
        left, lo, hi, right = m.groups()
        try:
            lo_v, hi_v = float(lo), float(hi)
        except ValueError:
            raise ValueError(f"malformed interval endpoint in {text!r}") from None
        return cls(lo_v, hi_v, left == "[", right == "]")

    def __str__(self) -> str:
        def fmt(v):
            return "inf" if v == INF else "-inf" if v == -INF else repr(v)

        return f"{'[' if self.lo_closed else '('}{fmt(self.lo)}, {fmt(self.hi)}{']' if self.hi_closed else ')'}"

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo or (self.lo == other.lo and not self.lo_closed):
            lo, lo_c = self.lo, self.lo_closed
        else:
            lo, lo_c = other.lo, other.lo_closed
        if self.hi < other.hi or (self.hi == other.hi and not self.hi_closed):
            hi, hi_c = self.hi, self.hi_closed
        else:
            hi, hi_c = other.hi, other.hi_closed
        return Interval(lo, hi, lo_c, hi_c)

    def point(self, t: float) -> float:
        """Map t in [0, 1] monotonically onto the interval (the sampling transform)."""
        if self.degenerate:
            return self.lo
        if self.bounded:
            span = self.hi - self.lo
            a = self.lo if self.lo_closed else self.lo + CLIP * span
            b = self.hi if self.hi_closed else self.hi - CLIP * span
            return a + (b - a) * t
        if math.isinf(self.lo) and math.isinf(self.hi):
            t = min(max(t, CLIP), 1.0 - CLIP)
            return math.tan(math.pi * (t - 0.5))
        s = SHIFT * (2.0 * t - 1.0)
        if math.isfinite(self.lo):
            return self.lo + math.exp(s)
        return self.hi - math.exp(-s)

    def sample(self, rng: random.Random) -> float:
        return self.point(rng.random())

    def grid(self, n: int) -> list[float]:
        """``n`` deterministic, strictly increasing points (midpoint quantiles)."""
        if self.degenerate:
            return [self.lo]
        return [self.point((i + 0.5) / n) for i in range(n)]


def contains(interval: Interval, x: float) -> bool:
    if math.isnan(x):
        return False
    if x < interval.lo or x > interval.hi:
        return False
    if x == interval.lo and not interval.lo_closed:
        return False
    if x == interval.hi and not interval.hi_closed:
        return False
    return True


@dataclass(frozen=True)
class TolerancePolicy:
    eps_abs: float = 1e-9
    eps_rel: float = 1e-9
    bisect_width: float = 1e-12
    max_bisect_iters: int = 200

    def __post_init__(self):
        for name in ("eps_abs", "eps_rel", "bisect_width"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        if int(self.max_bisect_iters) != self.max_bisect_iters or self.max_bisect_iters < 1:
            raise ValueError("max_bisect_iters must be an integer >= 1")

    def radius(self, a: float, b: float) -> float:
        return self.eps_abs + self.eps_rel * max(abs(a), abs(b))


def approx_eq(tol: TolerancePolicy, a: float, b: float) -> bool:
    return abs(a - b) <= tol.radius(a, b)


@dataclass(frozen=True)
class OrderedSemigroup:
    """A candidate strictly linearly ordered semigroup ``(I, <=, op)``.

    ``op`` is a black box; nothing here assumes the axioms hold. Catalog
    entries additionally carry a default ``reference`` element and the
    closed-form additive ``oracle`` (normalized so ``oracle(reference) == 1``).
    """

    name: str
    interval: Interval
    op: Callable[[float, float], float]
    tol: TolerancePolicy = field(default_factory=TolerancePolicy)
    reference: Optional[float] = field(default=None, compare=False)
    oracle: Optional[Callable[[float], float]] = field(default=None, compare=False, repr=False)
    dsl: Optional[str] = field(default=None, compare=False)

    def apply(self, x: float, y: float) -> float:
        """Evaluate the operation, normalizing failures to :class:`EvaluationError`."""
        try:
            v = self.op(x, y)
        except EvaluationError:
            raise
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationError(f"{self.name}: op({x!r}, {y!r}) failed: {exc}", (x, y)) from exc
        if math.isnan(v):
            raise EvaluationError(f"{self.name}: op({x!r}, {y!r}) is NaN", (x, y))
        return v

    def checked(self, x: float, y: float) -> float:
        v = self.apply(x, y)
        if not contains(self.interval, v):
            raise ClosureError(f"{self.name}: op({x!r}, {y!r}) = {v!r} escapes {self.interval}", (x, y), v)
        return v

    def with_tol(self, **overrides) -> "OrderedSemigroup":
        return replace(self, tol=replace(self.tol, **overrides))


# Dyadic exponents


MAX_DYADIC_EXP = 62


@dataclass(frozen=True, order=False)
class Dyadic:
    """The positive dyadic rational ``k / 2**n`` in canonical form (k odd or n == 0)."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("dyadic numerator must be >= 1")
        if self.n < 0:
            raise ValueError("dyadic exponent must be >= 0")
        if self.n > 0 and self.k % 2 == 0:
            raise ValueError("Dyadic must be canonical; use Dyadic.of()")

    @classmethod
    def of(cls, k: int, n: int = 0) -> "Dyadic":
        if k < 1 or n < 0:
            raise ValueError(f"not a positive dyadic: {k}/2^{n}")
        tz = min(n, (k & -k).bit_length() - 1)
        return cls(k >> tz, n - tz)

    @classmethod
    def from_fraction(cls, q: Fraction | int | float | str) -> "Dyadic":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls.of(q.numerator, den.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, 1 << self.n)

    def __float__(self) -> float:
        return self.k / (1 << self.n)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic.from_fraction(self.value + other.value)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic.of(self.k * other.k, self.n + other.n)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.value < other.value

    def __le__(self, other: "Dyadic") -> bool:
        return self.value <= other.value

    def __str__(self) -> str:
        return f"{self.k}/{1 << self.n}" if self.n else str(self.k)


# Catalog


def _add(x, y):
    return x + y


def _mul(x, y):
    return x * y


def _affine(x, y):
    return x + y + x * y


def _velocity(x, y):
    return (x + y) / (1.0 + x * y)


_E = math.e
_TANH1 = math.tanh(1.0)

_CATALOG = (
    OrderedSemigroup("add_all", Interval(-INF, INF), _add, reference=1.0,
                     oracle=lambda x: x, dsl="x + y"),
    OrderedSemigroup("add_pos", Interval(0.0, INF), _add, reference=1.0,
                     oracle=lambda x: x, dsl="x + y"),
    OrderedSemigroup("mult_pos", Interval(0.0, INF), _mul, reference=_E,
                     oracle=math.log, dsl="x * y"),
    OrderedSemigroup("affine", Interval(0.0, INF), _affine, reference=_E - 1.0,
                     oracle=math.log1p, dsl="x + y + x*y"),
    OrderedSemigroup("velocity", Interval(-1.0, 1.0), _velocity, reference=_TANH1,
                     oracle=math.atanh, dsl="(x + y) / (1 + x*y)"),
)


def catalog() -> list[OrderedSemigroup]:
    """The built-in semigroups, each with a closed-form additive embedding."""
    return list(_CATALOG)


def builtin(name: str) -> OrderedSemigroup:
    for sg in _CATALOG:
        if sg.name == name:
            return sg
    raise KeyError(name)


def iter_samples(interval: Interval, rng: random.Random, count: int) -> Iterator[float]:
    for _ in range(count):
        yield interval.sample(rng)
