import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordsemi.core import (INF, Dyadic, Interval, OrderedSemigroup, TolerancePolicy, approx_eq, builtin,
                          catalog, contains)
from ordsemi.errors import ClosureError, EvaluationError


class TestInterval:
    def test_contains_examples(self):
        assert not contains(Interval(0, INF), 0.0)
        assert contains(Interval(0, 1, True, True), 1.0)
        assert contains(Interval(-1, 1), 0.5)

    def test_nan_never_contained(self):
        assert not contains(Interval(-INF, INF), math.nan)

    @pytest.mark.parametrize("args, msg", [
        ((0, INF, True, True), "closed infinite endpoint"),
        ((2, 1), "empty"),
        ((1, 1, True, False), "single-point"),
        ((math.nan, 1), "NaN"),
    ])
    def test_invalid(self, args, msg):
        with pytest.raises(ValueError, match=msg):
            Interval(*args)

    @pytest.mark.parametrize("text, expected", [
        ("(0, inf)", Interval(0, INF)),
        ("[-1, 1)", Interval(-1, 1, True, False)),
        ("(-inf,inf)", Interval(-INF, INF)),
        (" [0 , 0] ", Interval(0, 0, True, True)),
    ])
    def test_parse(self, text, expected):
        assert Interval.parse(text) == expected

    @pytest.mark.parametrize("text", ["0, 1", "(0 1)", "(a, 1)", "[0, inf]", "{0, 1}"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            Interval.parse(text)

    def test_str_round_trip(self):
        for iv in [Interval(0, INF), Interval(-1, 1, True, False), Interval(-INF, 2.5, False, True)]:
            assert Interval.parse(str(iv)) == iv

    def test_intersect(self):
        a = Interval(0, 2, True, False)
        b = Interval(1, INF)
        assert a.intersect(b) == Interval(1, 2)
        assert Interval(0, 1, True, True).intersect(Interval(0, 1)) == Interval(0, 1)

    @pytest.mark.parametrize("iv", [Interval(0, INF), Interval(-INF, INF), Interval(-1, 1),
                                    Interval(1, INF, True), Interval(-INF, 0), Interval(0, 1, True, True)])
    def test_samples_inside(self, iv):
        rng = random.Random(1)
        for _ in range(2000):
            assert contains(iv, iv.sample(rng))

    @pytest.mark.parametrize("iv", [Interval(0, INF), Interval(-INF, INF), Interval(-1, 1)])
    def test_grid_strictly_increasing(self, iv):
        g = iv.grid(256)
        assert len(g) == 256
        assert all(a < b for a, b in zip(g, g[1:]))
        assert all(contains(iv, x) for x in g)


class TestTolerance:
    def test_approx_eq_examples(self):
        tol = TolerancePolicy()
        assert approx_eq(tol, 1.0, 1.0)
        assert not approx_eq(tol, 1.0, 1.0 + 1e-6)
        assert approx_eq(tol, 0.0, 5e-10)

    @pytest.mark.parametrize("kw", [{"eps_abs": 0}, {"eps_rel": -1}, {"bisect_width": math.inf},
                                    {"max_bisect_iters": 0}, {"max_bisect_iters": 1.5}])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            TolerancePolicy(**kw)

    @given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
    def test_symmetric(self, a, b):
        tol = TolerancePolicy()
        assert approx_eq(tol, a, b) == approx_eq(tol, b, a)


class TestSemigroup:
    def test_catalog_examples(self):
        assert {s.name for s in catalog()} == {"add_all", "add_pos", "mult_pos", "affine", "velocity"}
        assert builtin("mult_pos").op(2, 3) == 6
        assert builtin("velocity").op(0.5, 0.5) == pytest.approx(0.8, abs=1e-15)
        assert builtin("affine").op(1, 1) == 3

    def test_unknown_builtin(self):
        with pytest.raises(KeyError):
            builtin("nope")

    @pytest.mark.parametrize("name", ["add_all", "add_pos", "mult_pos", "affine", "velocity"])
    def test_oracle_normalized(self, name):
        s = builtin(name)
        assert s.oracle(s.reference) == pytest.approx(1.0, abs=1e-15)

    def test_apply_normalizes_errors(self):
        s = OrderedSemigroup("div", Interval(-INF, INF), lambda x, y: x / y)
        with pytest.raises(EvaluationError) as ei:
            s.apply(1.0, 0.0)
        assert ei.value.inputs == (1.0, 0.0)
        nan = OrderedSemigroup("nan", Interval(-INF, INF), lambda x, y: math.nan)
        with pytest.raises(EvaluationError):
            nan.apply(1.0, 2.0)

    def test_checked_reports_partial(self):
        s = OrderedSemigroup("mul", Interval(-2, 2), lambda x, y: x * y)
        with pytest.raises(ClosureError) as ei:
            s.checked(1.5, 1.5)
        assert ei.value.partial == 2.25

    def test_hashable_and_with_tol(self):
        s = builtin("mult_pos")
        t = s.with_tol(eps_abs=1e-6)
        assert t.tol.eps_abs == 1e-6 and s.tol.eps_abs == 1e-9
        assert len({s, builtin("mult_pos")}) == 1


class TestDyadic:
    @given(st.integers(1, 10 ** 6), st.integers(0, 40))
    def test_canonical_value_preserving(self, k, n):
        d = Dyadic.of(k, n)
        assert d.value == Fraction(k, 2 ** n)
        assert d.k % 2 == 1 or d.n == 0
        assert Dyadic.of(d.k, d.n) == d

    def test_arith(self):
        a, b = Dyadic.of(3, 2), Dyadic.of(1, 2)
        assert a + b == Dyadic.of(1)
        assert a * b == Dyadic.of(3, 4)
        assert b < a and a <= a
        assert str(Dyadic.of(6, 3)) == "3/4"
        assert float(Dyadic.of(5, 1)) == 2.5

    @pytest.mark.parametrize("k, n", [(0, 0), (-1, 2), (1, -1)])
    def test_rejects(self, k, n):
        with pytest.raises(ValueError):
            Dyadic.of(k, n)

    def test_non_canonical_constructor(self):
        with pytest.raises(ValueError):
            Dyadic(2, 1)

    def test_from_fraction(self):
        assert Dyadic.from_fraction("3/8") == Dyadic(3, 3)
        with pytest.raises(ValueError):
            Dyadic.from_fraction(Fraction(1, 3))
