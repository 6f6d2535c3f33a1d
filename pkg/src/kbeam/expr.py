"""Arithmetic expression parser for user-defined loads.

Grammar (over the variables x, u, v):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | 'x' | 'u' | 'v' | '(' expr ')'

'^' is exponentiation and binds tighter than unary minus (-x^2 is -(x^2))
and associates to the right (2^3^2 is 2^(3^2)).  Numeric literals may carry
a decimal point and an exponent suffix.  Compiled expressions evaluate with
numpy semantics, so division by zero or fractional powers of negative
numbers yield non-finite values that surface later as solver diagnostics.
"""

from __future__ import annotations

import re
from typing import Callable

import numpy as np

VARIABLES = ("x", "u", "v")

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_]\w*")


class ExpressionError(ValueError):
    """Malformed load expression; the message carries the position."""


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(("number", m.group(), i))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(("name", m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ExpressionError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, at = self.peek()
        if kind != "op" or value != op:
            raise ExpressionError(f"expected {op!r} at position {at}")
        self.take()

    def parse(self) -> Callable:
        fn = self.expr()
        kind, value, at = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected {value!r} at position {at}")
        return fn

    def expr(self) -> Callable:
        fn = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                rhs = self.term()
                fn = (
                    (lambda a, b: lambda x, u, v: a(x, u, v) + b(x, u, v))
                    if value == "+"
                    else (lambda a, b: lambda x, u, v: a(x, u, v) - b(x, u, v))
                )(fn, rhs)
            else:
                return fn

    def term(self) -> Callable:
        fn = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.take()
                rhs = self.factor()
                fn = (
                    (lambda a, b: lambda x, u, v: a(x, u, v) * b(x, u, v))
                    if value == "*"
                    else (lambda a, b: lambda x, u, v: a(x, u, v) / b(x, u, v))
                )(fn, rhs)
            else:
                return fn

    def factor(self) -> Callable:
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            inner = self.factor()
            if value == "-":
                return lambda x, u, v: -inner(x, u, v)
            return inner
        return self.power()

    def power(self) -> Callable:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.take()
            exponent = self.factor()
            return lambda x, u, v: np.power(base(x, u, v), exponent(x, u, v))
        return base

    def atom(self) -> Callable:
        kind, value, at = self.take()
        if kind == "number":
            const = float(value)
            return lambda x, u, v: const
        if kind == "name":
            if value not in VARIABLES:
                raise ExpressionError(
                    f"unknown variable {value!r} at position {at} "
                    f"(allowed: {', '.join(VARIABLES)})"
                )
            index = VARIABLES.index(value)
            return lambda x, u, v: (x, u, v)[index]
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ExpressionError(f"unexpected end of expression at position {at}")
        raise ExpressionError(f"unexpected {value!r} at position {at}")


def parse_force_expression(text: str) -> Callable:
    """Compile an expression over (x, u, v) into a vectorized evaluator."""
    if not text or not text.strip():
        raise ExpressionError("empty expression")
    inner = _Parser(text).parse()

    def evaluate(x, u, v):
        with np.errstate(all="ignore"):
            return inner(np.asarray(x, dtype=float), u, v)

    return evaluate
