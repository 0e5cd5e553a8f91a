"""Numerical continuity diagnostics.

These report moduli of continuity on shrinking scales; they cannot prove
continuity. Right translations are probed as left translations of the
reversed semigroup, and the joint probe evaluates only the corners of each
box, which bound the whole box image when the operation is monotone in each
argument.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import ElementClass, classify, dual_reversed, dyadic_power
from .core import CLIP, Dyadic, OrderedSemigroup, contains
from .errors import MonotoneViolation, NotStrictlyPositive


class Side(enum.Enum):
    Above = "above"
    Below = "below"


@dataclass(frozen=True)
class ConvergenceReport:
    subject: str
    sequence_tail: list = field(hash=False)  # (n, value) pairs
    limit_claim: float
    max_tail_gap: float

    def lines(self) -> list[str]:
        out = [f"PROBE {self.subject} n={n} value={v!r}" for n, v in self.sequence_tail]
        out.append(f"PROBE {self.subject} limit={self.limit_claim!r} max_tail_gap={self.max_tail_gap!r}")
        return out


def probe_approx_unit(sg: OrderedSemigroup, a: float, x: float, n_max: int) -> ConvergenceReport:
    """The sequence ``a o x^(1/2^n)``, n = 1..n_max, which must decrease to ``a``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not contains(sg.interval, a):
        raise ValueError(f"{a!r} is not in {sg.interval}")
    if classify(sg, x) is not ElementClass.StrictlyPositive:
        raise NotStrictlyPositive(f"{x!r} is not strictly positive in {sg.name}")
    tol = sg.tol
    seq = []
    prev = None
    for n in range(1, n_max + 1):
        v = sg.apply(a, dyadic_power(sg, x, Dyadic.of(1, n)))
        if prev is not None and v > prev + tol.radius(v, prev):
            raise MonotoneViolation(f"{sg.name}: a o x^(1/2^{n}) = {v!r} increased from {prev!r}")
        if v < a - tol.radius(v, a):
            raise MonotoneViolation(f"{sg.name}: a o x^(1/2^{n}) = {v!r} dropped below a = {a!r}")
        seq.append((n, v))
        prev = v
    return ConvergenceReport(f"{sg.name}:approx-unit(a={a!r},x={x!r})", seq, a, abs(seq[-1][1] - a))


def _room(sg: OrderedSemigroup, x0: float, upward: bool) -> float:
    """Distance from x0 to the end of the interval on one side (capped at 1)."""
    end = sg.interval.hi if upward else sg.interval.lo
    return min(1.0, abs(end - x0))


def _require_interior(sg: OrderedSemigroup, *points: float) -> None:
    iv = sg.interval
    for p in points:
        margin = CLIP * (iv.hi - iv.lo) if iv.bounded else CLIP
        if not (contains(iv, p) and p - iv.lo > margin and iv.hi - p > margin):
            raise ValueError(f"{p!r} is not interior to {iv}")


def translation_profile(sg: OrderedSemigroup, a: float, x0: float, side: Side, steps: int,
                        right: bool = False) -> list[float]:
    """``|l_a(x0 +/- s 2^-j) - l_a(x0)|`` for j = 1..steps.

    With ``right=True`` the right translation ``x -> x o a`` is probed, as the
    left translation of the reversed semigroup.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    _require_interior(sg, x0)
    if right:
        sg = dual_reversed(sg)
    up = side is Side.Above
    scale = _room(sg, x0, up)
    sign = 1.0 if up else -1.0
    base = sg.apply(a, x0)
    return [abs(sg.apply(a, x0 + sign * scale * 2.0 ** -j) - base) for j in range(1, steps + 1)]


def probe_translation_continuity(sg: OrderedSemigroup, a: float, x0: float, side: Side, steps: int,
                                 right: bool = False) -> float:
    return max(translation_profile(sg, a, x0, side, steps, right)[-3:])


def joint_spreads(sg: OrderedSemigroup, x1: float, x2: float, steps: int) -> list[float]:
    """Corner spread of op over the boxes ``[x1 +/- r] x [x2 +/- r]``, r halving."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    _require_interior(sg, x1, x2)
    rho = min(_room(sg, x1, True), _room(sg, x1, False), _room(sg, x2, True), _room(sg, x2, False))
    op = sg.apply
    centre = op(x1, x2)
    out = []
    for i in range(1, steps + 1):
        r = rho * 2.0 ** -i
        vals = [centre, op(x1 - r, x2 - r), op(x1 - r, x2 + r), op(x1 + r, x2 - r), op(x1 + r, x2 + r)]
        out.append(max(vals) - min(vals))
    return out


def probe_joint_continuity(sg: OrderedSemigroup, x1: float, x2: float, steps: int) -> float:
    return joint_spreads(sg, x1, x2, steps)[-1]
