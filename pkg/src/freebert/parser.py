"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' natural)?
    base   := rational | 'x' natural | '(' expr ')'

Rationals are ``int`` or ``int/int``. There is no implicit multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .ncpoly import NCPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[-+*^/()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.nvars = nvars
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def at(self, value: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val == value

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: set[str]):
        kind, val, pos = self.peek()
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos, frozenset(expected))

    def parse(self) -> NCPoly:
        f = self.expr()
        if self.peek()[0] != "end":
            self.fail({"+", "-", "*", "^", "end of input"})
        return f

    def expr(self) -> NCPoly:
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NCPoly:
        acc = self.factor()
        while self.at("*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> NCPoly:
        base = self.base()
        if self.at("^"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                self.fail({"natural number"})
            self.take()
            return base ** int(val)
        return base

    def base(self) -> NCPoly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(val)
            if self.at("/"):
                self.take()
                k2, v2, p2 = self.peek()
                if k2 != "num":
                    self.fail({"integer denominator"})
                self.take()
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2)
                return NCPoly.const(self.nvars, Fraction(num, int(v2)))
            return NCPoly.const(self.nvars, num)
        if kind == "var":
            self.take()
            idx = int(val[1:])
            if not 1 <= idx <= self.nvars:
                raise ParseError(f"variable {val} outside x1..x{self.nvars}", pos)
            return NCPoly.var(self.nvars, idx)
        if self.at("("):
            self.take()
            inner = self.expr()
            if not self.at(")"):
                self.fail({")", "+", "-", "*", "^"})
            self.take()
            return inner
        self.fail({"rational", "variable", "("})


def parse(text: str, nvars: int) -> NCPoly:
    """Parse ``text`` into an element of Q<x1..x_nvars>."""
    if nvars < 1:
        raise ValueError("nvars must be positive")
    return _Parser(text, nvars).parse()
