"""Real exponentials, logarithms and the additive embedding of a semigroup.

For a strictly positive reference ``u`` the embedding of a strictly positive
``x`` is the real ``r`` with ``exp_u(r) = x``. Strictly negative elements are
handled by the reflected dual (``t -> -t``), where they become positive, and
the unit maps to 0.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from . import algebra
from .algebra import ElementClass, classify, dual_reflected
from .axioms import check_axioms, check_root_existence
from .core import Dyadic, OrderedSemigroup, contains
from .errors import AxiomViolation, NonpositiveExponent, NotStrictlyPositive, OutOfRange

EXP_MAX_DEPTH = 40
LOG_MAX_SCALE = 64  # bracket exponents 2^-64 .. 2^64


class TargetInterval(enum.Enum):
    FullLine = "FullLine"  # R
    ClosedHalfLine = "ClosedHalfLine"  # [0, inf)
    OpenHalfLine = "OpenHalfLine"  # (0, inf)
    SinglePoint = "SinglePoint"  # {0}

    def __str__(self):
        return self.value


def _require_positive(sg: OrderedSemigroup, x: float, what: str) -> None:
    c = classify(sg, x)
    if c is not ElementClass.StrictlyPositive:
        raise NotStrictlyPositive(f"{what}={x!r} is {c} in {sg.name}, not strictly positive")


def exp_map(sg: OrderedSemigroup, x: float, r: Union[float, Fraction, Dyadic]) -> float:
    """``inf { x^d : d dyadic, d >= r }`` approximated from above.

    Uses ``d_n = ceil(r 2^n) / 2^n``. The loop stops as soon as ``d_n == r``
    (the infimum is attained), or once ``x^(d_n) - x^(d_n - 2^-n)`` drops below
    ``10 eps_abs``. The true value lies in that bracket, since
    ``d_n - 2^-n < r``.
    """
    _require_positive(sg, x, "base")
    q = r.value if isinstance(r, Dyadic) else Fraction(r)
    if q <= 0:
        raise NonpositiveExponent(f"exponent must be > 0, got {r!r}")
    thresh = 10 * sg.tol.eps_abs
    value = None
    for n in range(EXP_MAX_DEPTH + 1):
        c = math.ceil(q * (1 << n))
        d = Dyadic.of(c, n)
        value = algebra.dyadic_power(sg, x, d)
        if d.value == q:
            return value
        if c > 1:
            below = algebra.dyadic_power(sg, x, Dyadic.of(c - 1, n))
            if value - below < thresh:
                return value
    return value


@dataclass
class _Ladder:
    """Cached powers ``u^(2^m)`` and roots ``u^(2^-j)`` of one reference."""

    sg: OrderedSemigroup
    u: float
    ups: list = field(default_factory=list)

    def up(self, m: int) -> float:
        if not self.ups:
            self.ups.append(self.u)
        while len(self.ups) <= m:
            prev = self.ups[-1]
            nxt = self.sg.apply(prev, prev)
            self.ups.append(nxt if contains(self.sg.interval, nxt) else math.inf)
        return self.ups[m]

    def step(self, e: int) -> float:
        # u^(2^e) for any integer e
        return self.up(e) if e >= 0 else algebra._two_power_root(self.sg, self.u, -e)


def log_map(sg: OrderedSemigroup, u: float, x: float) -> float:
    """The exponent ``r > 0`` with ``exp_u(r) = x``.

    Bisection on ``r`` after bracketing by doubling or halving from 1. The
    bracket ends are powers of two, so every midpoint is dyadic and
    ``exp_u(mid) = u^lo o u^(width/2)`` needs one operation per step.
    """
    _require_positive(sg, u, "reference")
    _require_positive(sg, x, "argument")
    return _log(_Ladder(sg, u), x)


def _log(lad: _Ladder, x: float, clamp: bool = False) -> float:
    # clamp: elements below u^(2^-LOG_MAX_SCALE) map to 0 instead of raising
    op = lad.sg.apply
    if x >= lad.u:
        e = 0
        while lad.up(e + 1) <= x:
            e += 1
            if e >= LOG_MAX_SCALE:
                raise OutOfRange(f"{x!r} exceeds u^(2^{LOG_MAX_SCALE})")
    else:
        e = -1
        while lad.step(e) > x:
            e -= 1
            if e <= -LOG_MAX_SCALE:
                if clamp:
                    return 0.0
                raise OutOfRange(f"{x!r} is below u^(2^-{LOG_MAX_SCALE})")
    lo, v_lo = 2.0 ** e, lad.step(e)
    while v_lo != x:
        e -= 1
        h = 2.0 ** e
        if lo + h == lo:
            break
        cand = op(v_lo, lad.step(e))
        if cand == v_lo:
            # further steps cannot move the value
            break
        if cand <= x:
            lo, v_lo = lo + h, cand
    return lo


@dataclass(frozen=True)
class EmbeddingFn:
    """A computed additive representation ``f`` with ``f(x o y) = f(x) + f(y)``."""

    source: OrderedSemigroup
    reference: float
    target: TargetInterval
    eval: Callable[[float], float] = field(repr=False)

    def __call__(self, x: float) -> float:
        return self.eval(x)

    def to_csv(self, points) -> str:
        rows = ["x,f_x\n"]
        rows += [f"{x:.17g},{self.eval(x):.17g}\n" for x in points]
        return "".join(rows)


def _bisect_predicate(pred, lo, hi, iters=2000):
    # pred(lo) false, pred(hi) true; shrink to float resolution
    for _ in range(iters):
        mid = lo + (hi - lo) / 2
        if not lo < mid < hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _find_unit(sg: OrderedSemigroup, neg: float, pos: float) -> float:
    op = sg.op
    return _bisect_predicate(lambda a: op(a, a) > a, neg, pos)


def _inverse(sg: OrderedSemigroup, u: float, e: float) -> float:
    """The w < e with ``w o u = e``."""
    op = sg.op
    lo = None
    for c in algebra._approach(sg.interval, e, upward=False):
        if op(c, u) <= e:
            lo = c
            break
    if lo is None:
        raise OutOfRange(f"{sg.name}: {u!r} has no inverse inside {sg.interval}")
    return _bisect_predicate(lambda w: op(w, u) >= e, lo, e)


def _census(sg: OrderedSemigroup, samples: int, seed: int):
    rng = random.Random(seed)
    pts = [sg.interval.sample(rng) for _ in range(samples)]
    iv = sg.interval
    if iv.lo_closed:
        pts.append(iv.lo)
    if iv.hi_closed:
        pts.append(iv.hi)
    by_class: dict[ElementClass, list[float]] = {c: [] for c in ElementClass}
    for p in pts:
        by_class[classify(sg, p)].append(p)
    return by_class


def _median(values):
    s = sorted(values)
    return s[(len(s) - 1) // 2]


def build_embedding(sg: OrderedSemigroup, reference: Union[float, str, None] = "auto",
                    samples: int = 1000, seed: int = 42, verify: bool = True) -> EmbeddingFn:
    """Construct the additive embedding of ``sg``.

    The target interval is decided by a sign census over ``samples`` points
    plus any closed endpoints; this is a heuristic, not a proof.
    Surjectivity onto the target is not checked.
    """
    if verify:
        bad = check_axioms(sg, samples, seed) + check_root_existence(sg, samples, seed)
        if bad:
            raise AxiomViolation(f"{sg.name} fails the axioms ({len(bad)} violations)", bad)
    census = _census(sg, samples, seed)
    pos, neg, units = (census[c] for c in ElementClass)
    if reference is None or reference == "auto":
        ref = None
    else:
        ref = float(reference)

    if not pos and not neg:
        target = TargetInterval.SinglePoint
    elif pos and neg:
        target = TargetInterval.FullLine
    elif units:
        target = TargetInterval.ClosedHalfLine
    else:
        target = TargetInterval.OpenHalfLine

    if target is TargetInterval.SinglePoint:
        def single(x):
            c = classify(sg, x)
            if c is not ElementClass.Unit:
                raise OutOfRange(f"{x!r} is {c}; the census saw only the unit")
            return 0.0
        return EmbeddingFn(sg, units[0], target, single)

    refl = dual_reflected(sg)
    pos_ladder = neg_ladder = None
    if pos:
        u = ref if ref is not None else _median(pos)
        _require_positive(sg, u, "reference")
        pos_ladder = _Ladder(sg, u)
        if neg:
            # both signs: a unit exists, and the negative side must use the
            # inverse of u so both halves share the same scale
            e = _find_unit(sg, max(neg), min(pos))
            w = _inverse(sg, u, e)
            neg_ladder = _Ladder(refl, -w)
    else:
        # only strictly negative elements: work entirely in the reflection
        u = ref if ref is not None else _median(neg)
        c = classify(sg, u)
        if c is not ElementClass.StrictlyNegative:
            raise NotStrictlyPositive(f"reference {u!r} is {c}; expected a strictly negative element here")
        neg_ladder = _Ladder(refl, -u)

    def f(x: float) -> float:
        c = classify(sg, x)
        if c is ElementClass.Unit:
            return 0.0
        if c is ElementClass.StrictlyPositive:
            if pos_ladder is None:
                raise OutOfRange(f"{x!r} is strictly positive but the census saw none")
            return _log(pos_ladder, x, clamp=True)
        if neg_ladder is None:
            raise OutOfRange(f"{x!r} is strictly negative but the census saw none")
        return -_log(neg_ladder, -x, clamp=True)

    return EmbeddingFn(sg, u, target, f)


def verify_additivity(f: EmbeddingFn, samples: int, seed: int) -> float:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sg = f.source
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        x, y = sg.interval.sample(rng), sg.interval.sample(rng)
        z = sg.checked(x, y)
        worst = max(worst, abs(f(z) - f(x) - f(y)))
    return worst


def verify_exp_homomorphism(sg: OrderedSemigroup, x: float, samples: int, seed: int,
                            r_max: float = 2.0, grid_bits: int | None = 20) -> float:
    """Max of ``|exp_x(r1) o exp_x(r2) - exp_x(r1 + r2)|`` over sampled exponents.

    With ``grid_bits`` set, exponents are drawn from the grid ``k / 2^grid_bits``
    so every value lies on the exact branch of :func:`exp_map`; with ``None``
    they are arbitrary floats and each term carries the ``10 eps_abs``
    approximation error.
    """
    _require_positive(sg, x, "base")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        if grid_bits is None:
            r1, r2 = (Fraction(rng.uniform(0, r_max)) or Fraction(r_max) for _ in range(2))
        else:
            top = int(r_max * (1 << grid_bits))
            r1, r2 = (Fraction(rng.randint(1, top), 1 << grid_bits) for _ in range(2))
        lhs = sg.apply(exp_map(sg, x, r1), exp_map(sg, x, r2))
        worst = max(worst, abs(lhs - exp_map(sg, x, r1 + r2)))
    return worst
