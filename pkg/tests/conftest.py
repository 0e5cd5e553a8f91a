"""Shared fixtures: closed-form oracles and deliberately broken test doubles.

The oracles never call into the library's numerics; they are textbook
formulas for the real power ``x^t`` of each catalog semigroup.
"""

import math

import pytest

from ordsemi.core import INF, Interval, OrderedSemigroup, builtin, catalog
from ordsemi.opdsl import ExprOp

CATALOG_NAMES = [sg.name for sg in catalog()]

# x^t for real t > 0, per catalog entry
POWER = {
    "add_all": lambda x, t: x * t,
    "add_pos": lambda x, t: x * t,
    "mult_pos": lambda x, t: x ** t,
    "affine": lambda x, t: math.expm1(t * math.log1p(x)),
    "velocity": lambda x, t: math.tanh(t * math.atanh(x)),
}

# square roots written without going through the power formula
SQRT = {
    "add_all": lambda x: x / 2,
    "add_pos": lambda x: x / 2,
    "mult_pos": math.sqrt,
    "affine": lambda x: math.sqrt(1 + x) - 1,
    "velocity": lambda x: x / (1 + math.sqrt(1 - x * x)),
}

# additive embeddings, unnormalized
LOG = {
    "add_all": lambda x: x,
    "add_pos": lambda x: x,
    "mult_pos": math.log,
    "affine": math.log1p,
    "velocity": math.atanh,
}


def oracle_sign(name, x):
    v = LOG[name](x)
    return (v > 0) - (v < 0)


def sub_double():
    return OrderedSemigroup("sub", Interval(-INF, INF), lambda x, y: x - y)


def mul_pm2_double():
    return OrderedSemigroup("mul_pm2", Interval(-2, 2), lambda x, y: x * y)


def add_from_one_double():
    return OrderedSemigroup("add_ge1", Interval(1, INF, lo_closed=True), lambda x, y: x + y)


STEP_SOURCE = "x + y + tanh(1e15*y)"
STEP_HEIGHT = 1.0  # tanh jumps from 0 to 1 just above y = 0


def step_double():
    return OrderedSemigroup("stepjump", Interval(-INF, INF), ExprOp.from_source(STEP_SOURCE), dsl=STEP_SOURCE)


@pytest.fixture(params=CATALOG_NAMES)
def sg(request):
    return builtin(request.param)
