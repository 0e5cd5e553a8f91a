"""The lexicographic semigroup on the disjoint union of fibers [0, r], exactly.

Elements are pairs ``(r, x)`` with ``0 <= x <= r``, ordered lexicographically
and added componentwise. Every element has a half, yet translation by (1, 0)
is discontinuous from above at the unit (0, 0): the order topology of this
set is not separable. The dyadic variant restricts ``r`` to dyadic rationals
(or 0); its order is separable but not conditionally complete.

All arithmetic uses :class:`fractions.Fraction`; nothing is approximated.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPositive


class LexVariant(enum.Enum):
    FullUnion = "full"
    DyadicUnion = "dyadic"


def _is_dyadic_or_zero(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def render(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class LexElement:
    # field order gives dataclass ordering = lexicographic order
    r: Fraction
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "x", Fraction(self.x))
        if not 0 <= self.x <= self.r:
            raise ValueError(f"({self.r}, {self.x}) is not in the fiber [0, r]")

    def __str__(self) -> str:
        return f"({render(self.r)}, {render(self.x)})"

    def in_variant(self, variant: LexVariant) -> bool:
        return variant is LexVariant.FullUnion or _is_dyadic_or_zero(self.r)


ZERO = LexElement(0, 0)


def lex_compare(a: LexElement, b: LexElement) -> int:
    """-1, 0 or 1 as a is less than, equal to, or greater than b."""
    return (a > b) - (a < b)


def _trusted(r: Fraction, x: Fraction) -> LexElement:
    # skips validation; sums and halves of valid elements stay in their fibers
    e = object.__new__(LexElement)
    object.__setattr__(e, "r", r)
    object.__setattr__(e, "x", x)
    return e


def lex_add(a: LexElement, b: LexElement) -> LexElement:
    return _trusted(a.r + b.r, a.x + b.x)


def lex_half(a: LexElement) -> LexElement:
    return _trusted(a.r / 2, a.x / 2)


def translated_sequence_infimum(a: LexElement, x: LexElement, n_max: int = 20):
    """Infimum of ``a + x/2^n`` over all n >= 1, plus the first n_max terms.

    Since ``x > (0, 0)`` forces ``r_x > 0``, the first components
    ``r_a + r_x/2^n`` decrease strictly to ``r_a`` and never reach it. The
    lower bounds are exactly the elements with first component ``<= r_a``;
    the greatest of them is the top of the fiber over ``r_a``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if x == ZERO:
        raise NotPositive("x must be strictly greater than (0, 0)")
    prefix = []
    h = x
    for _ in range(n_max):
        h = lex_half(h)
        prefix.append(lex_add(a, h))
    return LexElement(a.r, a.r), prefix


@dataclass(frozen=True)
class LexDiscontinuityReport:
    variant: LexVariant
    translate_by: LexElement
    sequence: list  # (1/2^n, 0), n = 1..n_max
    images: list
    limit_of_sequence: LexElement
    limit_of_images: LexElement
    image_of_limit: LexElement

    @property
    def discontinuous(self) -> bool:
        return self.limit_of_images != self.image_of_limit

    def lines(self) -> list[str]:
        a = self.translate_by
        out = [f"variant: {self.variant.name}"]
        if self.variant is LexVariant.FullUnion:
            out.append("carrier: disjoint union of [0, r] over all real r >= 0 (lexicographic order, componentwise +)")
            out.append("note: order is dense and conditionally complete, every element has a half, "
                       "but the order topology is not separable")
        else:
            out.append("carrier: disjoint union of [0, d] over dyadic d and d = 0 (lexicographic order, componentwise +)")
            out.append("note: inferred reading: this order is separable but not conditionally complete; "
                       "the gap below is the same as in the full union")
        for (n, s), img in zip(enumerate(self.sequence, 1), self.images):
            out.append(f"n={n} x_n={s} l_a(x_n)={img}")
        out.append(f"inf x_n = {self.limit_of_sequence}")
        out.append(f"inf l_a(x_n) = {self.limit_of_images}")
        out.append(f"l_a(inf x_n) = {self.image_of_limit}")
        verdict = "DISCONTINUOUS from above" if self.discontinuous else "continuous from above"
        out.append(f"l_a with a={a} at {self.limit_of_sequence}: {verdict}")
        return out


def demonstrate_discontinuity(variant: LexVariant = LexVariant.FullUnion,
                              a: LexElement = LexElement(1, 0), n_max: int = 20) -> LexDiscontinuityReport:
    """Translate the sequence (1/2^n, 0), which decreases to (0, 0), by ``a``."""
    if not a.in_variant(variant):
        raise ValueError(f"{a} is not an element of the {variant.name} carrier")
    one = LexElement(1, 0)
    seq_inf, seq = translated_sequence_infimum(ZERO, one, n_max)
    img_inf, images = translated_sequence_infimum(a, one, n_max)
    return LexDiscontinuityReport(variant, a, seq, images, seq_inf, img_inf, lex_add(a, seq_inf))


# Exhaustive checks on small grids


def lex_grid(step: Fraction = Fraction(1, 2), top: Fraction = Fraction(2)) -> list[LexElement]:
    vals = [step * i for i in range(int(top / step) + 1)]
    return [LexElement(r, x) for r in vals for x in vals if x <= r]


def lex_between(a: LexElement, b: LexElement, variant: LexVariant = LexVariant.FullUnion) -> LexElement:
    """An element strictly between a < b, constructed exactly."""
    if not a < b:
        raise ValueError("need a < b")
    if a.r == b.r:
        return LexElement(a.r, (a.x + b.x) / 2)
    if a.x < a.r:
        return LexElement(a.r, (a.x + a.r) / 2)
    if b.x > 0:
        return LexElement(b.r, b.x / 2)
    # a is a fiber top and b a fiber bottom: use a fiber in between
    return LexElement((a.r + b.r) / 2, 0)


def check_lex_axioms(grid: list[LexElement]) -> list[str]:
    """Associativity, strict two-sided monotonicity and exact halves on ``grid``."""
    problems = []
    for p, q, s in itertools.product(grid, repeat=3):
        if lex_add(lex_add(p, q), s) != lex_add(p, lex_add(q, s)):
            problems.append(f"associativity fails at {p}, {q}, {s}")
    for p, q in itertools.product(grid, repeat=2):
        if p < q:
            for s in grid:
                if not lex_add(p, s) < lex_add(q, s):
                    problems.append(f"left monotonicity fails at {p} < {q}, {s}")
                if not lex_add(s, p) < lex_add(s, q):
                    problems.append(f"right monotonicity fails at {p} < {q}, {s}")
    for p in grid:
        h = lex_half(p)
        if lex_add(h, h) != p:
            problems.append(f"half of {p} is wrong")
    return problems
