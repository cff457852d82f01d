"""Closed-form expression language for symbols.

Grammar (EBNF)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' int)?
    atom   := number | 'i' | variable | func '(' expr ')' | '(' expr ')'
    func   in {exp, sin, cos, sqrt, conj, abs}

ASTs are plain nested tuples, hashable and comparable with ``==``:
``('num', complex)``, ``('var',)``, ``('+', a, b)``, ``('-', a, b)``,
``('*', a, b)``, ``('/', a, b)``, ``('pow', a, n)``, ``('call', name, a)``
and ``('neg', a)``.  Any identifier that is not a function name is accepted
as the variable, so both ``1/x`` and ``w/(1+abs(w)^2)`` parse; an expression
may use only one variable name.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ExprSyntaxError

FUNCTIONS = ("exp", "sin", "cos", "sqrt", "conj", "abs")

NUM = ("num",)

_TOKEN = re.compile(
    r"\s*(?:(?P<float>\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def num(value) -> tuple:
    return ("num", complex(value))


VAR = ("var",)
ONE = num(1.0)
ZERO = num(0.0)
I = num(1j)


def add(a, b):
    return ("+", a, b)


def sub(a, b):
    return ("-", a, b)


def mul(a, b):
    return ("*", a, b)


def div(a, b):
    return ("/", a, b)


def powi(a, n: int):
    return ("pow", a, int(n))


def call(name: str, a):
    if name not in FUNCTIONS:
        raise ValueError(f"unknown function {name!r}")
    return ("call", name, a)


def conj(a):
    return call("conj", a)


def abs2(a):
    """|a|^2 as conj(a)*a; stays exactly real-nonnegative pointwise."""
    return mul(conj(a), a)


def _tokenize(text: str):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("float") is not None:
            tokens.append(("number", m.group("float"), m.start("float")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.varname = None

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        ast = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {val!r}", pos)
        return ast

    @staticmethod
    def _combine(op, lhs, rhs):
        # constant folding on literals keeps print -> parse an AST identity
        if lhs[0] == "num" and rhs[0] == "num" and op in "+-*":
            val = {"+": lhs[1] + rhs[1], "-": lhs[1] - rhs[1], "*": lhs[1] * rhs[1]}[op]
            return num(val)
        return (op, lhs, rhs)

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                node = self._combine(val, node, rhs)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                node = self._combine(val, node, rhs)
            else:
                return node

    def factor(self):
        node = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val, pos = self.take()
            if kind == "op" and val == "-":
                sign = -1
                kind, val, pos = self.take()
            if kind != "number" or "." in val:
                raise ExprSyntaxError("exponent must be an integer", pos)
            node = ("pow", node, sign * int(val))
        return node

    def atom(self):
        kind, val, pos = self.take()
        if kind == "number":
            return num(float(val))
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "op" and val == "-":
            inner = self.atom()
            # fold literal negation so printed negative literals re-parse equal
            if inner[0] == "num":
                return num(-inner[1])
            return ("neg", inner)
        if kind == "name":
            if val in FUNCTIONS:
                self.expect_op("(")
                node = self.expr()
                self.expect_op(")")
                return ("call", val, node)
            if val == "i":
                return I
            if self.varname is None:
                self.varname = val
            elif val != self.varname:
                raise ExprSyntaxError(
                    f"expression mixes variables {self.varname!r} and {val!r}", pos
                )
            return VAR
        raise ExprSyntaxError(f"unexpected token {val!r}", pos)


def parse_expression(text: str) -> tuple:
    """Parse ``text`` into an AST; raises ExprSyntaxError with a position."""
    return _Parser(text).parse()


def _fmt_real(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _fmt_complex(z: complex) -> str:
    if z == 1j:
        return "i"
    if z.imag == 0.0:
        return _fmt_real(z.real) if z.real >= 0 else f"(-{_fmt_real(-z.real)})"
    if z.real == 0.0:
        im = _fmt_real(z.imag) if z.imag >= 0 else f"-{_fmt_real(-z.imag)}"
        return f"({im}*i)"
    im = _fmt_complex(complex(0.0, z.imag))[1:-1]  # strip outer parens
    return f"({_fmt_complex(complex(z.real))}+{im})"


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "pow": 4}


def to_string(ast, _prec=0) -> str:
    """Pretty-print an AST; ``parse_expression(to_string(a)) == a`` up to
    literal formatting."""
    kind = ast[0]
    if kind == "num":
        return _fmt_complex(ast[1])
    if kind == "var":
        return "x"
    if kind in "+-*/":
        p = _PREC[kind]
        # right operand needs strictly higher precedence for - and /
        left = to_string(ast[1], p)
        right = to_string(ast[2], p + 1)
        s = f"{left}{kind}{right}"
        return f"({s})" if p < _prec else s
    if kind == "neg":
        s = f"-{to_string(ast[1], _PREC['neg'])}"
        return f"({s})" if _PREC["neg"] < _prec else s
    if kind == "pow":
        base = to_string(ast[1], _PREC["pow"] + 1)
        s = f"{base}^{ast[2]}"
        return f"({s})" if _PREC["pow"] < _prec else s
    if kind == "call":
        return f"{ast[1]}({to_string(ast[2])})"
    raise ValueError(f"bad AST node {ast!r}")


def substitute(ast, replacement):
    """Replace the variable by another AST (function composition)."""
    kind = ast[0]
    if kind == "var":
        return replacement
    if kind == "num":
        return ast
    if kind in ("+", "-", "*", "/"):
        return (kind, substitute(ast[1], replacement),
                substitute(ast[2], replacement))
    if kind == "neg":
        return ("neg", substitute(ast[1], replacement))
    if kind == "pow":
        return ("pow", substitute(ast[1], replacement), ast[2])
    if kind == "call":
        return ("call", ast[1], substitute(ast[2], replacement))
    raise ValueError(f"bad AST node {ast!r}")


def evaluate(ast, x):
    """Evaluate an AST at ``x`` (scalar or ndarray), complex binary64.

    Division by zero and overflow produce inf/nan silently; callers sample
    open intervals where the expression is finite.
    """
    x = np.asarray(x, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return _eval(ast, x)


def _eval(ast, x):
    kind = ast[0]
    if kind == "num":
        return np.broadcast_to(np.asarray(ast[1]), x.shape).copy() if x.shape else ast[1]
    if kind == "var":
        return x
    if kind == "+":
        return _eval(ast[1], x) + _eval(ast[2], x)
    if kind == "-":
        return _eval(ast[1], x) - _eval(ast[2], x)
    if kind == "*":
        return _eval(ast[1], x) * _eval(ast[2], x)
    if kind == "/":
        return _eval(ast[1], x) / _eval(ast[2], x)
    if kind == "neg":
        return -_eval(ast[1], x)
    if kind == "pow":
        return _eval(ast[1], x) ** ast[2]
    if kind == "call":
        v = _eval(ast[2], x)
        name = ast[1]
        if name == "exp":
            return np.exp(v)
        if name == "sin":
            return np.sin(v)
        if name == "cos":
            return np.cos(v)
        if name == "sqrt":
            return np.sqrt(v)
        if name == "conj":
            return np.conj(v)
        if name == "abs":
            return np.abs(v).astype(complex)
    raise ValueError(f"bad AST node {ast!r}")
