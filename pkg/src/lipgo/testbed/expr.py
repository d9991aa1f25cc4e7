"""Expressions in one variable ``x``: parsing, evaluation, pretty-printing and d/dx.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := unary ("^" factor)?
    unary   := "-" unary | primary
    primary := number | "x" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"

``^`` is right-associative.  Unary minus binds tighter than ``^``, so
``-x^2`` is ``(-x)^2``; write ``-(x^2)`` for the other reading.
``sin(x)^2`` is ``(sin x)^2``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..core import LipgoError

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")
NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}


class ExpressionError(LipgoError):
    pass


class ParseError(ExpressionError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {' or '.join(expected)})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class EvaluationError(ExpressionError):
    def __init__(self, message: str, x: float):
        super().__init__(f"{message} at x={x!r}")
        self.x = x


class NonDifferentiable(ExpressionError):
    pass


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Func:
    name: str
    arg: "Node"


Node = Union[Const, Var, Named, Neg, BinOp, Func]

# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.peek()
        if text != value or kind == "end":
            raise ParseError(f"unexpected {text or 'end of input'!r}", pos, (repr(value),))
        self.advance()

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.unary()
        if self.peek()[1] == "^":
            self.advance()
            return BinOp("^", base, self.factor())
        return base

    def unary(self) -> Node:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.advance()
            return Neg(self.unary())
        return self.primary()

    def primary(self) -> Node:
        kind, text, pos = self.advance()
        if kind == "num":
            return Const(float(text))
        if kind == "name":
            if text == "x":
                return Var()
            if text in NAMED_CONSTANTS:
                return Named(text)
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(text, arg)
            raise ParseError(f"unknown identifier {text!r}", pos)
        if text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(
            f"unexpected {text or 'end of input'!r}", pos, ("number", "x", "pi", "e", "function", "'('")
        )


def parse_expression(text: str) -> Node:
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(text)
    node = parser.expr()
    kind, tok, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {tok!r}", pos, ("operator", "end of input"))
    return node


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _first_bad(x, mask):
    x = np.broadcast_to(np.asarray(x, dtype=float), np.shape(mask))
    return float(np.ravel(x)[np.argmax(np.ravel(mask))])


def evaluate(node: Node, x):
    """Evaluate at a float or numpy array; domain errors name the offending x."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Named):
        return NAMED_CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.arg, x)
    if isinstance(node, BinOp):
        left = evaluate(node.left, x)
        right = evaluate(node.right, x)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            zero = np.asarray(right) == 0
            if np.any(zero):
                raise EvaluationError("division by zero", _first_bad(x, zero))
            return np.divide(left, right)
        left_a, right_a = np.asarray(left, dtype=float), np.asarray(right, dtype=float)
        bad = (left_a == 0) & (right_a < 0)
        if np.any(bad):
            raise EvaluationError("zero raised to a negative power", _first_bad(x, bad))
        bad = (left_a < 0) & (right_a != np.round(right_a))
        if np.any(bad):
            raise EvaluationError("negative base with non-integer exponent", _first_bad(x, bad))
        return np.power(left_a, right_a)[()]
    if isinstance(node, Func):
        arg = evaluate(node.arg, x)
        if node.name == "log":
            bad = np.asarray(arg) <= 0
            if np.any(bad):
                raise EvaluationError("log of non-positive value", _first_bad(x, bad))
        elif node.name == "sqrt":
            bad = np.asarray(arg) < 0
            if np.any(bad):
                raise EvaluationError("sqrt of negative value", _first_bad(x, bad))
        return getattr(np, "absolute" if node.name == "abs" else node.name)(arg)
    raise TypeError(f"not an expression node: {node!r}")


@dataclass(frozen=True)
class CompiledExpression:
    """Callable ``x -> value`` accepting floats or arrays; picklable."""

    node: Node

    def __call__(self, x):
        value = evaluate(self.node, x)
        if np.ndim(x) == 0:
            return float(value)
        return np.broadcast_to(value, np.shape(x)).astype(float)

    def __str__(self):
        return to_string(self.node)


def compile_expression(node: Node) -> CompiledExpression:
    return CompiledExpression(node)


# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PRECEDENCE[node.op]
    if isinstance(node, Neg):
        return _PRECEDENCE["neg"]
    if isinstance(node, Const) and node.value < 0:
        return _PRECEDENCE["neg"]
    return 5


def to_string(node: Node) -> str:
    """Text that parses back to the same tree (parenthesized where needed)."""
    if isinstance(node, Const):
        text = repr(float(node.value))
        return f"({text})" if node.value < 0 else text
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Named):
        return node.name
    if isinstance(node, Func):
        return f"{node.name}({to_string(node.arg)})"
    if isinstance(node, Neg):
        inner = to_string(node.arg)
        atomic = _prec(node.arg) == 5 or isinstance(node.arg, Neg)
        return f"-{inner}" if atomic else f"-({inner})"
    p = _PRECEDENCE[node.op]
    left, right = to_string(node.left), to_string(node.right)
    if node.op == "^":
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < p:
            right = f"({right})"
    else:
        if _prec(node.left) < p:
            left = f"({left})"
        if _prec(node.right) <= p:
            right = f"({right})"
    return f"{left} {node.op} {right}" if p == 1 else f"{left}{node.op}{right}"


# --------------------------------------------------------------------------
# differentiation
# --------------------------------------------------------------------------


def _is_const(node: Node, value: float | None = None) -> bool:
    return isinstance(node, Const) and (value is None or node.value == value)


def _add(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return BinOp("+", a, b)


def _sub(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    return BinOp("-", a, b)


def _mul(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return BinOp("*", a, b)


def _div(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b) and b.value != 0:
        return Const(a.value / b.value)
    if _is_const(a, 0.0):
        return Const(0.0)
    if _is_const(b, 1.0):
        return a
    return BinOp("/", a, b)


def _pow(a: Node, b: Node) -> Node:
    if _is_const(b, 1.0):
        return a
    if _is_const(b, 0.0):
        return Const(1.0)
    return BinOp("^", a, b)


def _neg(a: Node) -> Node:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _has_var(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, (Neg, Func)):
        return _has_var(node.arg)
    if isinstance(node, BinOp):
        return _has_var(node.left) or _has_var(node.right)
    return False


def differentiate(node: Node) -> Node:
    """Symbolic d/dx.  Only literal constant subexpressions are folded."""
    if isinstance(node, (Const, Named)):
        return Const(0.0)
    if isinstance(node, Var):
        return Const(1.0)
    if isinstance(node, Neg):
        return _neg(differentiate(node.arg))
    if isinstance(node, BinOp):
        u, v = node.left, node.right
        du, dv = differentiate(u), differentiate(v)
        if node.op == "+":
            return _add(du, dv)
        if node.op == "-":
            return _sub(du, dv)
        if node.op == "*":
            return _add(_mul(du, v), _mul(u, dv))
        if node.op == "/":
            return _div(_sub(_mul(du, v), _mul(u, dv)), _pow(v, Const(2.0)))
        if not _has_var(v):
            # d(u^c) = c u^(c-1) u'
            return _mul(_mul(v, _pow(u, _sub(v, Const(1.0)))), du)
        # d(u^v) = u^v (v' log u + v u'/u)
        return _mul(node, _add(_mul(dv, Func("log", u)), _div(_mul(v, du), u)))
    if isinstance(node, Func):
        u = node.arg
        du = differentiate(u)
        if node.name == "abs":
            raise NonDifferentiable("abs is a non-differentiable primitive")
        outer = {
            "sin": lambda: Func("cos", u),
            "cos": lambda: _neg(Func("sin", u)),
            "tan": lambda: _div(Const(1.0), _pow(Func("cos", u), Const(2.0))),
            "exp": lambda: Func("exp", u),
            "log": lambda: _div(Const(1.0), u),
            "sqrt": lambda: _div(Const(1.0), _mul(Const(2.0), Func("sqrt", u))),
        }[node.name]()
        return _mul(outer, du)
    raise TypeError(f"not an expression node: {node!r}")
