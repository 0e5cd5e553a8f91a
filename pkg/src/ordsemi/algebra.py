"""Element classification, roots, natural and dyadic powers, dual semigroups."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

from .core import MAX_DYADIC_EXP, Dyadic, Interval, OrderedSemigroup, approx_eq, contains
from .errors import ClosureError, EvaluationError, RootOutOfRange


class ElementClass(enum.Enum):
    StrictlyPositive = "StrictlyPositive"
    StrictlyNegative = "StrictlyNegative"
    Unit = "Unit"

    def __str__(self):
        return self.value


def classify(sg: OrderedSemigroup, a: float, banded: bool = False) -> ElementClass:
    """Trichotomy by comparing ``a o a`` with ``a``.

    This works without knowing whether a unit exists. The comparison is exact
    by default: an absolute band would call every element within ``eps_abs``
    of its own square a unit, e.g. ``1e-12`` under multiplication or
    ``1 - 1e-16`` under velocity addition. ``banded=True`` treats
    ``approx_eq(a o a, a)`` as a unit instead.
    """
    s = sg.apply(a, a)
    if s == a or banded and approx_eq(sg.tol, s, a):
        return ElementClass.Unit
    return ElementClass.StrictlyPositive if s > a else ElementClass.StrictlyNegative


# Powers


def _raw_power(op: Callable[[float, float], float], x: float, m: int) -> float:
    # square-and-multiply; no closure checks, used inside bisection loops
    result = None
    base = x
    while True:
        if m & 1:
            result = base if result is None else op(result, base)
        m >>= 1
        if not m:
            return result
        base = op(base, base)


def nat_power(sg: OrderedSemigroup, x: float, m: int) -> float:
    """The m-fold product ``x o x o ... o x`` by binary exponentiation."""
    if m < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = x
    while True:
        if m & 1:
            result = base if result is None else _step(sg, result, base, x)
        m >>= 1
        if not m:
            return result
        base = _step(sg, base, base, x)


def _step(sg, a, b, x):
    v = sg.apply(a, b)
    if not contains(sg.interval, v):
        raise ClosureError(f"{sg.name}: power of {x!r} escapes {sg.interval} (partial power {v!r})",
                           (x,), partial=v)
    return v


# Bracketing and bisection


def _approach(interval: Interval, x: float, upward: bool, steps: int = 64):
    """Candidates moving from x toward one end of the interval.

    Finite ends are approached by halving the remaining distance down to float
    resolution (then the end itself if it is closed); infinite ends by
    doubling an offset up to 2^steps times the scale of x.
    """
    end = interval.hi if upward else interval.lo
    closed = interval.hi_closed if upward else interval.lo_closed
    if math.isinf(end):
        sign = 1.0 if upward else -1.0
        scale = max(1.0, abs(x))
        for m in range(-10, steps + 1):
            yield x + sign * scale * 2.0 ** m
        return
    dist = end - x
    m = 1
    # halve until the candidate collapses onto the end in floating point
    while True:
        c = end - dist * 2.0 ** -m
        if c == end or m > 1100:
            break
        yield c
        m += 1
    if closed:
        yield end


def _bracket(sg: OrderedSemigroup, g: Callable[[float], float], x: float):
    """Find lo <= hi with g(lo) <= x <= g(hi) for an increasing power map g."""
    cls = classify(sg, x)
    if cls is ElementClass.Unit:
        return x, x
    if cls is ElementClass.StrictlyPositive:
        # positive roots lie below x; g(x) > x
        hi, nearest = x, None
        for c in _approach(sg.interval, x, upward=False):
            gc = _safe(g, c, upward=False)
            if gc <= x:
                return c, hi
            hi, nearest = c, gc
    else:
        lo, nearest = x, None
        for c in _approach(sg.interval, x, upward=True):
            gc = _safe(g, c, upward=True)
            if gc >= x:
                return lo, c
            lo, nearest = c, gc
    raise RootOutOfRange(f"{sg.name}: no root of {x!r} inside {sg.interval}", x, nearest)


def _safe(g, c, upward):
    try:
        v = g(c)
    except (OverflowError, ZeroDivisionError):
        return math.inf if upward else -math.inf
    if math.isnan(v):
        raise EvaluationError(f"power map is NaN at {c!r}", (c,))
    return v


def _bisect(g, x, lo, hi, width, max_iters, rel=False):
    for _ in range(max_iters):
        if rel:
            if hi - lo <= width * max(abs(lo), abs(hi)):
                break
        elif hi - lo < width:
            break
        mid = lo + (hi - lo) / 2
        if not lo < mid < hi:
            break
        gm = g(mid)
        if gm == x:
            return mid
        if gm < x:
            lo = mid
        else:
            hi = mid
    return lo + (hi - lo) / 2


def _root(sg: OrderedSemigroup, x: float, k: int, precise: bool = False) -> float:
    op = sg.op

    def g(y):
        return _raw_power(op, y, k)

    try:
        lo, hi = _bracket(sg, g, x)
        if lo == hi:
            return lo
        if precise:
            # full float resolution; deep roots of dyadic powers need it
            return _bisect(g, x, lo, hi, 4e-16, 400 + sg.tol.max_bisect_iters, rel=True)
        return _bisect(g, x, lo, hi, sg.tol.bisect_width, sg.tol.max_bisect_iters)
    except (ArithmeticError, ValueError) as exc:
        if isinstance(exc, EvaluationError):
            raise
        raise EvaluationError(f"{sg.name}: evaluation failed while solving y^{k} = {x!r}: {exc}", (x,)) from exc


def kth_root(sg: OrderedSemigroup, x: float, k: int) -> float:
    """The unique y in the interval with ``y^k == x`` (k-fold product), by bisection."""
    if k < 2:
        raise ValueError("k must be >= 2")
    y = _root(sg, x, k)
    if not contains(sg.interval, y):
        raise RootOutOfRange(f"{sg.name}: root of {x!r} falls outside {sg.interval}", x, y)
    back = _raw_power(sg.op, y, k)
    # conditioning of the k-fold power loosens the check for large k
    slack = 10 * sg.tol.eps_abs * max(1.0, k / 2)
    if abs(back - x) > slack + sg.tol.eps_rel * max(abs(back), abs(x)) * max(1.0, k / 2):
        raise RootOutOfRange(f"{sg.name}: y^{k} jumps over {x!r} (no root; got {back!r} at y={y!r})", x, back)
    return y


def square_root(sg: OrderedSemigroup, x: float) -> float:
    return kth_root(sg, x, 2)


@lru_cache(maxsize=8192)
def _two_power_root(sg: OrderedSemigroup, x: float, j: int) -> float:
    # x^(1/2^j): one bisection against the 2^j-fold power
    if j == 0:
        return x
    return _root(sg, x, 1 << j, precise=True)


def dyadic_power(sg: OrderedSemigroup, x: float, d: Dyadic) -> float:
    """``x^(k/2^n)``, representation independent.

    The fractional part is assembled from the 2^j-th roots for the set bits
    of the binary expansion, each found by a single bisection. Raising a
    single 2^n-th root to the k-th power would amplify its rounding error by
    a factor of k.
    """
    if d.n > MAX_DYADIC_EXP:
        raise ValueError(f"dyadic denominator exceeds 2^{MAX_DYADIC_EXP}")
    whole, frac = d.k >> d.n, d.k & ((1 << d.n) - 1)
    result = nat_power(sg, x, whole) if whole else None
    for j in range(1, d.n + 1):
        if frac >> (d.n - j) & 1:
            r = _two_power_root(sg, x, j)
            result = r if result is None else _step(sg, result, r, x)
    return result


# Dual constructions


@dataclass(frozen=True)
class _Swapped:
    inner: Callable[[float, float], float]

    def __call__(self, a, b):
        return self.inner(b, a)


@dataclass(frozen=True)
class _Negated:
    inner: Callable[[float, float], float]

    def __call__(self, a, b):
        return -self.inner(-a, -b)


def dual_reversed(sg: OrderedSemigroup) -> OrderedSemigroup:
    """Same interval, arguments swapped: right translations become left ones."""
    op = sg.op.inner if isinstance(sg.op, _Swapped) else _Swapped(sg.op)
    return replace(sg, name=f"reversed({sg.name})", op=op, oracle=None, dsl=None)


def dual_reflected(sg: OrderedSemigroup) -> OrderedSemigroup:
    """Transport along the decreasing bijection t -> -t.

    Strictly positive elements of ``sg`` become strictly negative ones and
    vice versa.
    """
    iv = sg.interval
    neg = Interval(-iv.hi, -iv.lo, iv.hi_closed, iv.lo_closed)
    op = sg.op.inner if isinstance(sg.op, _Negated) else _Negated(sg.op)
    ref = -sg.reference if sg.reference is not None else None
    return replace(sg, name=f"reflected({sg.name})", interval=neg, op=op, reference=ref, oracle=None, dsl=None)
