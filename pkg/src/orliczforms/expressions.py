"""A small arithmetic-expression language for user-defined formulas.

Grammar (recursive descent, ``^`` is right-associative and binds tighter
than unary minus)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Known functions: ``log`` (natural), ``exp``, ``sin``, ``cos``, ``sqrt``,
``abs``, ``sign``.  Known constants: ``e``, ``pi``.  The unicode operator
glyphs ``×``, ``÷`` and ``−`` are accepted as aliases for ``*``, ``/``, ``-``.

Expressions evaluate vectorized over numpy arrays and support exact symbolic
differentiation (powers must have constant exponents to be differentiable).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ExpressionError

_FUNCTIONS = {
    "log": np.log,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "sign": np.sign,
}

_CONSTANTS = {"e": math.e, "pi": math.pi}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str) -> list[str]:
    text = text.replace("×", "*").replace("÷", "/").replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ExpressionError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        if m.group("num") is not None:
            tokens.append(m.group(0).strip())
        else:
            tokens.append(m.group("name") or m.group("op"))
        pos = m.end()
    return tokens


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float

    def ev(self, env):
        return self.value

    def diff(self, var):
        return Num(0.0)

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var:
    name: str

    def ev(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise ExpressionError(f"unknown variable {self.name!r}") from None

    def diff(self, var):
        return Num(1.0) if self.name == var else Num(0.0)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def ev(self, env):
        a, b = self.left.ev(env), self.right.ev(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            return a / b
        return np.power(a, b)

    def diff(self, var):
        u, v = self.left, self.right
        du, dv = u.diff(var), v.diff(var)
        if self.op in "+-":
            return _bin(self.op, du, dv)
        if self.op == "*":
            return _bin("+", _bin("*", du, v), _bin("*", u, dv))
        if self.op == "/":
            num = _bin("-", _bin("*", du, v), _bin("*", u, dv))
            return _bin("/", num, _bin("*", v, v))
        # power: constant exponent only
        if not isinstance(v, Num):
            raise ExpressionError("cannot differentiate a power with non-constant exponent")
        c = v.value
        return _bin("*", _bin("*", Num(c), _bin("^", u, Num(c - 1.0))), du)

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object

    def ev(self, env):
        return _FUNCTIONS[self.fn](self.arg.ev(env))

    def diff(self, var):
        u = self.arg
        du = u.diff(var)
        if self.fn == "log":
            outer = _bin("/", Num(1.0), u)
        elif self.fn == "exp":
            outer = self
        elif self.fn == "sin":
            outer = Call("cos", u)
        elif self.fn == "cos":
            outer = _bin("*", Num(-1.0), Call("sin", u))
        elif self.fn == "sqrt":
            outer = _bin("/", Num(0.5), self)
        elif self.fn == "abs":
            outer = Call("sign", u)
        else:
            raise ExpressionError(f"cannot differentiate {self.fn!r}")
        return _bin("*", outer, du)

    def __str__(self):
        return f"{self.fn}({self.arg})"


def _bin(op, left, right):
    """Build a BinOp with light constant folding to keep derivatives small."""
    if isinstance(left, Num) and isinstance(right, Num):
        return Num(BinOp(op, left, right).ev({}))
    if op == "*":
        if (isinstance(left, Num) and left.value == 0.0) or (
            isinstance(right, Num) and right.value == 0.0
        ):
            return Num(0.0)
        if isinstance(left, Num) and left.value == 1.0:
            return right
        if isinstance(right, Num) and right.value == 1.0:
            return left
    if op in "+-" and isinstance(right, Num) and right.value == 0.0:
        return left
    if op == "+" and isinstance(left, Num) and left.value == 0.0:
        return right
    if op == "^" and isinstance(right, Num):
        if right.value == 1.0:
            return left
        if right.value == 0.0:
            return Num(1.0)
    return BinOp(op, left, right)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExpressionError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            node = _bin(self.take(), node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            node = _bin(self.take(), node, self.factor())
        return node

    def factor(self):
        if self.peek() in ("+", "-"):
            op = self.take()
            inner = self.factor()
            return inner if op == "+" else _bin("*", Num(-1.0), inner)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            return _bin("^", base, self.factor())
        return base

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        if tok == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        self.take()
        if re.match(r"^[\d.]", tok):
            return Num(float(tok))
        if tok in _FUNCTIONS:
            self.take("(")
            arg = self.expr()
            self.take(")")
            return Call(tok, arg)
        if tok in _CONSTANTS:
            return Num(_CONSTANTS[tok])
        return Var(tok)


def parse(text: str):
    """Parse ``text`` into an AST node; raise ExpressionError on bad input."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    parser = _Parser(tokens)
    node = parser.expr()
    if parser.peek() is not None:
        raise ExpressionError(f"trailing input starting at {parser.peek()!r}")
    return node


def evaluate(node, env) -> np.ndarray:
    """Evaluate an AST under a variable environment (numpy-vectorized)."""
    return node.ev(env)


def substitute(node, mapping):
    """Replace Var nodes by ASTs from ``mapping`` (used to expand e.g. r = |x|)."""
    if isinstance(node, Var) and node.name in mapping:
        return mapping[node.name]
    if isinstance(node, BinOp):
        return _bin(node.op, substitute(node.left, mapping), substitute(node.right, mapping))
    if isinstance(node, Call):
        return Call(node.fn, substitute(node.arg, mapping))
    return node


def free_variables(node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, BinOp):
        return free_variables(node.left) | free_variables(node.right)
    if isinstance(node, Call):
        return free_variables(node.arg)
    return set()
