import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ordsemi.algebra import dyadic_power
from ordsemi.core import INF, Dyadic, Interval, OrderedSemigroup, builtin
from ordsemi.embedding import (TargetInterval, build_embedding, exp_map, log_map, verify_additivity,
                               verify_exp_homomorphism)
from ordsemi.errors import AxiomViolation, NonpositiveExponent, NotStrictlyPositive, OutOfRange

from conftest import LOG, POWER, oracle_sign, sub_double


class TestExpMap:
    @pytest.mark.parametrize("name, x, r, expected", [
        ("add_pos", 1.0, math.pi, math.pi),
        ("mult_pos", 2.0, 1.5, 2 ** 1.5),
        ("mult_pos", 3.0, Fraction(3, 8), 3 ** 0.375),
    ])
    def test_examples(self, name, x, r, expected):
        assert exp_map(builtin(name), x, r) == pytest.approx(expected, abs=1e-8)

    def test_agrees_with_dyadic_power(self):
        s = builtin("mult_pos")
        d = Dyadic.of(3, 2)
        assert exp_map(s, 2.0, d) == dyadic_power(s, 2.0, d)

    def test_irrational_exponent_oracle(self, sg):
        p = POWER[sg.name]
        x = 0.5 if sg.name == "velocity" else 1.5
        rng = random.Random(2)
        for _ in range(20):
            r = rng.uniform(0.01, 3)
            assert exp_map(sg, x, r) == pytest.approx(p(x, r), abs=1e-7)

    def test_rejects(self):
        s = builtin("mult_pos")
        with pytest.raises(NonpositiveExponent):
            exp_map(s, 2.0, 0)
        with pytest.raises(NotStrictlyPositive):
            exp_map(s, 0.5, 1)

    def test_monotone(self):
        s = builtin("affine")
        rs = sorted(random.Random(1).uniform(0.001, 2) for _ in range(100))
        vals = [exp_map(s, 2.0, r) for r in rs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestLogMap:
    @pytest.mark.parametrize("name, u, x, expected", [
        ("mult_pos", math.e, 2.0, math.log(2)),
        ("add_pos", 1.0, 5.0, 5.0),
        ("mult_pos", 2.0, 2.0, 1.0),
    ])
    def test_examples(self, name, u, x, expected):
        assert log_map(builtin(name), u, x) == pytest.approx(expected, abs=1e-12)

    @settings(deadline=None, max_examples=50)
    @given(st.integers(1, 20 << 20))
    def test_inverts_exp(self, k):
        # grid exponents hit exp_map's exact branch, so only the log side is tested
        s = builtin("affine")
        r = Fraction(k, 1 << 20)
        x = exp_map(s, 1.0, r)
        assert log_map(s, 1.0, x) == pytest.approx(float(r), rel=1e-12, abs=1e-14)

    @settings(deadline=None, max_examples=30)
    @given(st.floats(0.01, 20))
    def test_round_trip_value(self, r):
        s = builtin("affine")
        x = exp_map(s, 1.0, r)
        assert exp_map(s, 1.0, log_map(s, 1.0, x)) == pytest.approx(x, abs=1e-8, rel=1e-12)

    def test_out_of_scale(self):
        with pytest.raises(OutOfRange):
            log_map(builtin("add_pos"), 1.0, 1e30)

    def test_requires_positive(self):
        with pytest.raises(NotStrictlyPositive):
            log_map(builtin("mult_pos"), 0.5, 2.0)


class TestBuildEmbedding:
    def test_velocity_auto(self):
        s = builtin("velocity")
        f = build_embedding(s)
        assert f.target is TargetInterval.FullLine
        rng = random.Random(0)
        for _ in range(200):
            x = rng.uniform(-0.999, 0.999)
            assert f(x) == pytest.approx(math.atanh(x) / math.atanh(f.reference), abs=1e-9)

    def test_add_pos_identity(self):
        f = build_embedding(builtin("add_pos"), 1.0)
        assert f.target is TargetInterval.OpenHalfLine
        for x in (0.001, 0.5, 1.0, 3.25, 1000.0):
            assert f(x) == pytest.approx(x, rel=1e-13)

    def test_single_point(self):
        s = OrderedSemigroup("zero", Interval(0, 0, True, True), lambda x, y: x + y)
        f = build_embedding(s)
        assert f.target is TargetInterval.SinglePoint
        assert f(0.0) == 0.0

    def test_target_from_oracle_census(self, sg):
        rng = random.Random(42)
        signs = {oracle_sign(sg.name, sg.interval.sample(rng)) for _ in range(1000)}
        expected = (TargetInterval.FullLine if {1, -1} <= signs
                    else TargetInterval.ClosedHalfLine if 0 in signs else TargetInterval.OpenHalfLine)
        assert build_embedding(sg, verify=False).target is expected

    def test_matches_oracle_with_reference(self, sg):
        f = build_embedding(sg, sg.reference, verify=False)
        g = LOG[sg.name]
        for x in sg.interval.intersect(Interval(-50, 50)).grid(128):
            assert f(x) == pytest.approx(g(x), abs=1e-9, rel=1e-9)

    def test_strictly_increasing(self, sg):
        f = build_embedding(sg, verify=False)
        ys = [f(x) for x in sg.interval.grid(200)]
        assert all(a < b for a, b in zip(ys, ys[1:]))

    def test_negative_only(self):
        s = OrderedSemigroup("neg", Interval(-INF, 0), lambda x, y: x + y)
        f = build_embedding(s)
        assert f.target is TargetInterval.OpenHalfLine
        # f is increasing and additive; reference maps to -1
        assert f(f.reference) == pytest.approx(-1.0)
        assert f(-6.0) == pytest.approx(3 * f(-2.0))

    def test_tiny_elements_clamp_to_zero(self):
        f = build_embedding(builtin("add_all"), 1.0, verify=False)
        assert f(1e-30) == 0.0
        assert f(3e-19) == pytest.approx(3e-19, rel=1e-12)

    def test_axiom_failure(self):
        with pytest.raises(AxiomViolation) as ei:
            build_embedding(sub_double())
        assert ei.value.violations

    def test_reference_must_be_positive(self):
        with pytest.raises(NotStrictlyPositive):
            build_embedding(builtin("mult_pos"), 0.5, verify=False)

    def test_csv(self):
        f = build_embedding(builtin("add_pos"), 1.0, verify=False)
        text = f.to_csv([0.5, 2.0])
        assert text == "x,f_x\n0.5,0.5\n2,2\n"


class TestVerification:
    @pytest.mark.parametrize("name, tol", [("mult_pos", 1e-6), ("add_all", 1e-9), ("velocity", 1e-6)])
    def test_additivity(self, name, tol):
        f = build_embedding(builtin(name), verify=False)
        assert verify_additivity(f, 1000, 3) <= tol

    @pytest.mark.parametrize("name, x, tol", [("add_pos", 1.0, 1e-9), ("mult_pos", 2.0, 1e-6), ("affine", 1.0, 1e-6)])
    def test_exp_homomorphism(self, name, x, tol):
        assert verify_exp_homomorphism(builtin(name), x, 500, 5) <= tol

    def test_exp_homomorphism_real_exponents(self):
        # arbitrary float exponents carry exp_map's own 10 eps_abs bracket per term
        assert verify_exp_homomorphism(builtin("mult_pos"), 2.0, 100, 5, grid_bits=None) <= 1e-6
