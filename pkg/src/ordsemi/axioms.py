"""Sampling-based falsification of the ordered-semigroup axioms.

Passing means no counterexample was found among the drawn samples; a finite
sample can never certify the axioms.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from . import algebra
from .core import OrderedSemigroup, approx_eq, contains
from .errors import RootOutOfRange

MONO_GUARD = 10  # multiples of eps_abs below which a < b is not tested


class Law(enum.IntEnum):
    Associativity = 0
    LeftMonotonicity = 1
    RightMonotonicity = 2
    Closure = 3
    RootExistence = 4

    def __str__(self):
        return self.name


_NAMES = ("a", "b", "x")


@dataclass(frozen=True)
class Violation:
    law: Law
    witness: tuple[float, ...]
    lhs: float
    rhs: float

    def line(self) -> str:
        parts = [self.law.name]
        parts += [f"{n}={v!r}" for n, v in zip(_NAMES, self.witness)]
        parts += [f"lhs={self.lhs!r}", f"rhs={self.rhs!r}"]
        return " ".join(parts)

    def sort_key(self):
        return (int(self.law), self.witness)


def _canonical(vs: list[Violation]) -> list[Violation]:
    return sorted(set(vs), key=Violation.sort_key)


def check_axioms(sg: OrderedSemigroup, samples: int, seed: int) -> list[Violation]:
    """Test closure, associativity and two-sided strict monotonicity.

    Sample ``i`` always consumes the same random draws, so a smaller sample
    count with the same seed checks a prefix of the same tuples.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    iv, tol, op = sg.interval, sg.tol, sg.apply
    out: list[Violation] = []
    guard = MONO_GUARD * tol.eps_abs
    for _ in range(samples):
        x, y, z, a, b, m = (iv.sample(rng) for _ in range(6))

        xy = op(x, y)
        if not contains(iv, xy):
            out.append(Violation(Law.Closure, (x, y), xy, xy))
            continue
        yz = op(y, z)
        if not contains(iv, yz):
            out.append(Violation(Law.Closure, (y, z), yz, yz))
            continue
        lhs, rhs = op(xy, z), op(x, yz)
        if not approx_eq(tol, lhs, rhs):
            out.append(Violation(Law.Associativity, (x, y, z), lhs, rhs))

        if a > b:
            a, b = b, a
        if b - a > guard:
            # "left" = monotone in the left argument: a o m < b o m
            am, bm = op(a, m), op(b, m)
            if not am < bm:
                out.append(Violation(Law.LeftMonotonicity, (a, b, m), am, bm))
            ma, mb = op(m, a), op(m, b)
            if not ma < mb:
                out.append(Violation(Law.RightMonotonicity, (a, b, m), ma, mb))
    return _canonical(out)


def check_root_existence(sg: OrderedSemigroup, samples: int, seed: int) -> list[Violation]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        x = sg.interval.sample(rng)
        try:
            algebra.square_root(sg, x)
        except RootOutOfRange as exc:
            nearest = exc.nearest if exc.nearest is not None else float("nan")
            out.append(Violation(Law.RootExistence, (x,), nearest, x))
    return _canonical(out)


def reverify(sg: OrderedSemigroup, v: Violation) -> bool:
    """Re-evaluate a violation's witness and confirm the failure is reproduced."""
    op, iv = sg.apply, sg.interval
    if v.law is Law.Closure:
        return not contains(iv, op(*v.witness))
    if v.law is Law.Associativity:
        x, y, z = v.witness
        return not approx_eq(sg.tol, op(op(x, y), z), op(x, op(y, z)))
    if v.law is Law.LeftMonotonicity:
        a, b, m = v.witness
        return not op(a, m) < op(b, m)
    if v.law is Law.RightMonotonicity:
        a, b, m = v.witness
        return not op(m, a) < op(m, b)
    try:
        algebra.square_root(sg, v.witness[0])
    except RootOutOfRange:
        return True
    return False


def report(violations: list[Violation]) -> str:
    return "".join(v.line() + "\n" for v in violations)


__all__ = ["Law", "Violation", "check_axioms", "check_root_existence", "reverify", "report"]
