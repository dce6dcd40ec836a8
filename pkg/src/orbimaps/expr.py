"""Expression language for rational functions in ``z``.

Grammar (whitespace is insignificant)::

    top    := expr ('.' expr)*          composition, outermost first
    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base (('^' | '**') exponent)?
    base   := integer | 'z' | '(' expr ')'

Exponents are integers, optionally signed or parenthesized (``z^-3``, ``z^(-3)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import UniPoly
from .ratmap import RationalMap, compose_all, make_map

__all__ = [
    "ParseError",
    "ExprSyntaxError",
    "NonIntegerExponent",
    "DivisionByZeroConstant",
    "Expr",
    "parse_expr",
    "parse_map",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
        self.pos = pos


class ExprSyntaxError(ParseError):
    pass


class NonIntegerExponent(ParseError):
    pass


class DivisionByZeroConstant(ParseError):
    pass


# ---------------------------------------------------------------------------
# syntax tree


class Expr:
    def rational(self) -> tuple[UniPoly, UniPoly]:
        """Value as an unreduced ``(numerator, denominator)`` pair."""
        raise NotImplementedError

    def lower(self) -> RationalMap:
        num, den = self.rational()
        return make_map(num, den)


@dataclass(frozen=True)
class Num(Expr):
    value: int

    def rational(self):
        return UniPoly.constant(self.value), UniPoly.constant(1)


@dataclass(frozen=True)
class Var(Expr):
    def rational(self):
        return UniPoly.z(), UniPoly.constant(1)


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def rational(self):
        n, d = self.arg.rational()
        return -n, d


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    pos: int = 0

    def rational(self):
        a, b = self.left.rational()
        c, d = self.right.rational()
        if self.op == "+":
            return a * d + c * b, b * d
        if self.op == "-":
            return a * d - c * b, b * d
        if self.op == "*":
            return a * c, b * d
        if not c:
            raise DivisionByZeroConstant("division by zero", self.pos)
        return a * d, b * c


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    pos: int = 0

    def rational(self):
        n, d = self.base.rational()
        e = self.exponent
        if e < 0:
            if not n:
                raise DivisionByZeroConstant("zero raised to a negative power", self.pos)
            n, d, e = d, n, -e
        return n**e, d**e


@dataclass(frozen=True)
class Compose(Expr):
    parts: tuple[Expr, ...]

    def rational(self):
        m = self.lower()
        return m.num, m.den

    def lower(self) -> RationalMap:
        return compose_all(p.lower() for p in self.parts)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^().z]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            bad = len(src) - len(src[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {src[bad]!r}", bad)
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        else:
            tokens.append(("op", m.group(2), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def at(self, *ops: str) -> bool:
        kind, text, _ = self.tok
        return kind == "op" and text in ops

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, op: str):
        if not self.at(op):
            kind, text, pos = self.tok
            got = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"expected {op!r}, got {got}", pos)
        return self.advance()

    def top(self) -> Expr:
        parts = [self.expr()]
        while self.at("."):
            self.advance()
            parts.append(self.expr())
        kind, text, pos = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos)
        return parts[0] if len(parts) == 1 else Compose(tuple(parts))

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+", "-"):
            op = self.advance()
            node = BinOp(op[1], node, self.term(), op[2])
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*", "/"):
            op = self.advance()
            node = BinOp(op[1], node, self.factor(), op[2])
        return node

    def factor(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Neg(self.factor())
        if self.at("+"):
            self.advance()
            return self.factor()
        node = self.base()
        if self.at("^", "**"):
            op = self.advance()
            node = Pow(node, self.exponent(), op[2])
        return node

    def base(self) -> Expr:
        kind, text, pos = self.tok
        if kind == "num":
            self.advance()
            return Num(int(text))
        if self.at("z"):
            self.advance()
            return Var()
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        got = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected a number, 'z' or '(', got {got}", pos)

    def exponent(self) -> int:
        kind, text, pos = self.tok
        sign = 1
        while self.at("-", "+"):
            if self.advance()[1] == "-":
                sign = -sign
            kind, text, pos = self.tok
        if kind == "num":
            self.advance()
            return sign * int(text)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            num, den = node.rational()
            if num.degree > 0 or den.degree > 0:
                raise NonIntegerExponent("exponent depends on z", pos)
            value = num.lc / den.lc if num else Fraction(0)
            if value.denominator != 1:
                raise NonIntegerExponent(f"exponent {value} is not an integer", pos)
            return sign * int(value)
        got = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected an integer exponent, got {got}", pos)


def parse_expr(src: str) -> Expr:
    """Parse ``src`` into a syntax tree; raises :class:`ParseError` subclasses."""
    return _Parser(src).top()


def parse_map(src: str) -> RationalMap:
    """Parse and lower to a canonical :class:`RationalMap`."""
    return parse_expr(src).lower()
