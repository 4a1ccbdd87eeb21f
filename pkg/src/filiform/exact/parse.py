"""Parser for the catalog expression language.

Grammar (usual precedence, ``^`` binds tightest and is right associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | "+" unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Exponents are nonnegative integer literals.  Names are
``[A-Za-z_][A-Za-z0-9_]*``.
"""

from __future__ import annotations

import re

from .poly import Polynomial
from .ratfunc import DivisionByZero, RationalFunction

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, source: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {source!r}" if source else ""))
        self.position = position
        self.source = source


def _tokenize(src: str):
    pos = 0
    tokens = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            # skip leading whitespace so the reported position is the bad character
            bad = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[bad]!r}", bad, src)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val or 'end of input'!r}", pos, self.src)

    def parse(self) -> RationalFunction:
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos, self.src)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise DivisionByZero(f"division by zero at position {pos} in {self.src!r}")
                    value = value / rhs
            else:
                return value

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.unary()
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", pos, self.src)
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return RationalFunction(Polynomial.constant(int(val)))
        if kind == "name":
            return RationalFunction(Polynomial.var(val))
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.src)


def parse_expr(src: str) -> RationalFunction:
    """Parse an expression into an exact :class:`RationalFunction`."""
    return _Parser(src).parse()


def render(f: RationalFunction) -> str:
    return f.render()
