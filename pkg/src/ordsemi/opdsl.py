"""A tiny expression language for binary operations in ``x`` and ``y``.

Grammar (``^`` binds tighter than unary minus, and is right-associative)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?
    primary := NUMBER | 'x' | 'y' | FUNC '(' expr ')' | '(' expr ')'

so ``-x^2`` is ``-(x^2)`` and ``2^-1`` is ``0.5``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Union

from .errors import DomainError, ExprSyntaxError, NumericOverflow, UnknownIdentifier

VARIABLES = ("x", "y")
FUNCTIONS = ("exp", "ln", "tanh", "atanh", "abs", "sqrt")
BINARY_OPS = ("+", "-", "*", "/", "^")


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    fn: str  # "neg" or one of FUNCTIONS
    arg: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Const, Var, Unary, Binary]


# Tokenizer

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    offset: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", _byte_offset(src, pos))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), _byte_offset(src, pos)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(src, len(src))))
    return toks


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


_ATOM_START = frozenset({"<number>", "x", "y", "(", "-"} | set(FUNCTIONS))


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind == "end":
            raise ExprSyntaxError(f"unexpected {self._describe()}", self.tok.offset, frozenset({text}))
        self.take()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else f"token {self.tok.text!r}"

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self._describe()}", self.tok.offset,
                                  frozenset(BINARY_OPS) | {"<end>"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            e = Binary(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.take().text
            e = Binary(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.take()
            return Unary("neg", self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            return Binary("^", base, self.unary())
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            v = float(t.text)
            if math.isinf(v):
                raise ExprSyntaxError(f"numeric literal {t.text!r} overflows", t.offset, frozenset())
            self.take()
            return Const(v)
        if t.kind == "name":
            self.take()
            if t.text in VARIABLES:
                return Var(t.text)
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Unary(t.text, arg)
            raise UnknownIdentifier(f"unknown identifier {t.text!r}", t.offset,
                                    frozenset(VARIABLES + FUNCTIONS))
        if t.kind == "op" and t.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        raise ExprSyntaxError(f"unexpected {self._describe()}", t.offset, _ATOM_START)


def parse(src: str) -> Expr:
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0, _ATOM_START)
    return _Parser(src).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_source(e: Expr) -> str:
    """Print ``e`` back to source; ``parse(to_source(e)) == e``."""
    return _show(e, 0)


def _show(e: Expr, ctx: int) -> str:
    if isinstance(e, Const):
        s = repr(e.value)
        # keep "1e-05" etc. parseable; negative zero never arises from parse
        return s
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        if e.fn == "neg":
            s = "-" + _show(e.arg, _PREC["neg"])
            return f"({s})" if ctx > _PREC["neg"] else s
        return f"{e.fn}({_show(e.arg, 0)})"
    p = _PREC[e.op]
    if e.op == "^":
        # base must be a primary; exponent re-enters at unary level
        s = f"{_show(e.left, p + 1)}^{_show(e.right, _PREC['neg'])}"
    else:
        # left-associative: right operand needs strictly higher binding
        s = f"{_show(e.left, p)} {e.op} {_show(e.right, p + 1)}"
    return f"({s})" if ctx > p else s


# Evaluation


def _ln(v):
    if v <= 0:
        raise DomainError(f"ln of non-positive value {v!r}")
    return math.log(v)


def _atanh(v):
    if not -1.0 < v < 1.0:
        raise DomainError(f"atanh outside (-1, 1): {v!r}")
    return math.atanh(v)


def _sqrt(v):
    if v < 0:
        raise DomainError(f"sqrt of negative value {v!r}")
    return math.sqrt(v)


def _exp(v):
    try:
        return math.exp(v)
    except OverflowError:
        raise NumericOverflow(f"exp({v!r}) overflows") from None


_UNARY: dict[str, Callable[[float], float]] = {
    "neg": lambda v: -v,
    "exp": _exp,
    "ln": _ln,
    "tanh": math.tanh,
    "atanh": _atanh,
    "abs": abs,
    "sqrt": _sqrt,
}


def _div(a, b):
    if b == 0:
        raise DomainError("division by zero")
    return a / b


def _pow(a, b):
    if a == 0 and b < 0:
        raise DomainError("0 raised to a negative power")
    if a < 0 and b != int(b):
        raise DomainError(f"negative base {a!r} with non-integer exponent {b!r}")
    try:
        return math.pow(a, b)
    except OverflowError:
        raise NumericOverflow(f"{a!r}^{b!r} overflows") from None


_BINARY: dict[str, Callable[[float, float], float]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _div,
    "^": _pow,
}


def compile_expr(e: Expr) -> Callable[[float, float], float]:
    """Turn the tree into nested closures; much faster than re-walking it."""
    if isinstance(e, Const):
        c = e.value
        return lambda x, y: c
    if isinstance(e, Var):
        return (lambda x, y: x) if e.name == "x" else (lambda x, y: y)
    if isinstance(e, Unary):
        f, g = _UNARY[e.fn], compile_expr(e.arg)
        return lambda x, y: f(g(x, y))
    f, l, r = _BINARY[e.op], compile_expr(e.left), compile_expr(e.right)
    return lambda x, y: f(l(x, y), r(x, y))


def _finite(v: float, x: float, y: float) -> float:
    if math.isnan(v):
        raise DomainError(f"undefined result at x={x!r}, y={y!r}", (x, y))
    if math.isinf(v):
        raise NumericOverflow(f"non-finite result at x={x!r}, y={y!r}", (x, y))
    return v


def evaluate(e: Expr, x: float, y: float) -> float:
    return ExprOp.from_expr(e)(x, y)


@dataclass(frozen=True)
class ExprOp:
    """A parsed expression usable as a semigroup operation (hashable by value)."""

    expr: Expr
    _fn: Callable = field(compare=False, repr=False, default=None)

    @classmethod
    def from_expr(cls, e: Expr) -> "ExprOp":
        return cls(e, compile_expr(e))

    @classmethod
    def from_source(cls, src: str) -> "ExprOp":
        return cls.from_expr(parse(src))

    def __call__(self, x: float, y: float) -> float:
        try:
            v = self._fn(x, y)
        except (DomainError, NumericOverflow) as exc:
            if not exc.inputs:
                exc.inputs = (x, y)
            raise
        except OverflowError:
            raise NumericOverflow(f"overflow at x={x!r}, y={y!r}", (x, y)) from None
        return _finite(v, x, y)

    def __str__(self) -> str:
        return to_source(self.expr)
