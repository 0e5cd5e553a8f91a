import math
import random

import pytest
from hypothesis import given, strategies as st

from ordsemi.core import catalog
from ordsemi.errors import DomainError, ExprSyntaxError, NumericOverflow, UnknownIdentifier
from ordsemi.opdsl import FUNCTIONS, Binary, Const, ExprOp, Unary, Var, evaluate, parse, to_source


@pytest.mark.parametrize("src, x, y, expected", [
    ("x + y + x*y", 1, 1, 3),
    ("(x + y) / (1 + x*y)", 0.5, 0.5, 0.8),
    ("x*y", 2, 3, 6),
    ("2^3^2", 0, 0, 512),
    ("-x^2", 3, 0, -9),
    ("2^-1", 0, 0, 0.5),
    ("x - y - 1", 5, 2, 2),
    ("x / y / 2", 8, 2, 2),
    ("abs(x) + sqrt(y)", -2, 9, 5),
    ("exp(ln(x))", 7, 0, 7),
])
def test_evaluate(src, x, y, expected):
    assert evaluate(parse(src), x, y) == pytest.approx(expected, rel=1e-15)


def test_atanh_half():
    # independent: atanh(t) = ln((1+t)/(1-t)) / 2
    assert evaluate(parse("atanh(x)"), 0.5, 0) == pytest.approx(math.log(3) / 2, rel=1e-15)


@pytest.mark.parametrize("src, offset", [
    ("x + * y", 4),
    ("", 0),
    ("x +", 3),
    ("(x + y", 6),
    ("x y", 2),
    ("ln x", 3),
    ("x $ y", 2),
    ("1e999 + x", 0),
])
def test_syntax_errors(src, offset):
    with pytest.raises(ExprSyntaxError) as ei:
        parse(src)
    assert ei.value.offset == offset
    assert f"at offset {offset}" in str(ei.value)


def test_expected_set_listed():
    with pytest.raises(ExprSyntaxError) as ei:
        parse("x + * y")
    assert {"x", "y", "("} <= ei.value.expected


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as ei:
        parse("x + sin(y)")
    assert ei.value.offset == 4


def test_offsets_are_bytes():
    with pytest.raises(ExprSyntaxError) as ei:
        parse("x + é")
    assert ei.value.offset == 4
    with pytest.raises(ExprSyntaxError) as ei:
        parse("éé + *")
    assert ei.value.offset == 0


@pytest.mark.parametrize("src, x, y, exc", [
    ("ln(x)+y", 0, 1, DomainError),
    ("x / y", 1, 0, DomainError),
    ("sqrt(x)", -1, 0, DomainError),
    ("atanh(x)", 1, 0, DomainError),
    ("x ^ y", -2, 0.5, DomainError),
    ("x ^ y", 0, -1, DomainError),
    ("exp(x)", 1000, 0, NumericOverflow),
    ("x * y", 1e200, 1e200, NumericOverflow),
])
def test_domain_errors(src, x, y, exc):
    with pytest.raises(exc) as ei:
        ExprOp.from_source(src)(x, y)
    assert ei.value.inputs == (x, y)


def test_negative_base_integer_exponent():
    assert ExprOp.from_source("x ^ 3")(-2, 0) == -8


def test_exprop_hashable_by_value():
    assert ExprOp.from_source("x+y") == ExprOp.from_source("x + y")
    assert len({ExprOp.from_source("x*y"), ExprOp.from_source("(x)*(y)")}) == 1
    assert str(ExprOp.from_source("(x + y) * 2")) == "(x + y) * 2.0"


@pytest.mark.parametrize("sg", catalog(), ids=lambda s: s.name)
def test_catalog_dsl_matches_native(sg):
    op = ExprOp.from_source(sg.dsl)
    rng = random.Random(0)
    for _ in range(1000):
        x, y = sg.interval.sample(rng), sg.interval.sample(rng)
        assert op(x, y) == sg.op(x, y)


_leaf = st.one_of(st.sampled_from([Var("x"), Var("y")]),
                  st.floats(0, 1e6, allow_nan=False).map(Const))


def _grow(children):
    return st.one_of(
        st.builds(Unary, st.sampled_from(("neg",) + FUNCTIONS), children),
        st.builds(Binary, st.sampled_from(["+", "-", "*", "/", "^"]), children, children),
    )


@given(st.recursive(_leaf, _grow, max_leaves=12))
def test_print_parse_round_trip(e):
    assert parse(to_source(e)) == e
