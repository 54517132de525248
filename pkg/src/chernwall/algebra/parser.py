"""Recursive-descent parser for polynomial text.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | NAME | "(" expr ")"
    NUMBER := INT ("/" INT)?

Juxtaposition (``2x``, ``x y``) is rejected.
"""

import string
from dataclasses import dataclass
from typing import Literal, Mapping, Optional

from sympy.polys.domains import QQ

from chernwall.algebra.poly import GradedRing, Polynomial

__all__ = ["ParseError", "UnknownVariableError", "parse"]


class ParseError(Exception):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ParseError):
    pass


TokenKind = Literal["number", "name", "op", "end"]


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: int


class InputStream:
    def __init__(self, text: str) -> None:
        self.pos = 0
        self.text = text

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos]

    def next(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch


class Tokenizer:
    OPERATORS = "+-*^()"

    def __init__(self, text: str) -> None:
        self.input = InputStream(text)
        self.current: Optional[Token] = None

    def peek(self) -> Token:
        if self.current is None:
            self.current = self.read_next()
        return self.current

    def next(self) -> Token:
        token = self.peek()
        self.current = None
        return token

    def read_while(self, predicate) -> str:
        out = []
        while not self.input.eof() and predicate(self.input.peek()):
            out.append(self.input.next())
        return "".join(out)

    def read_next(self) -> Token:
        self.read_while(str.isspace)
        start = self.input.pos
        if self.input.eof():
            return Token("end", "", start)
        ch = self.input.peek()
        if ch in string.digits:
            return self.read_number(start)
        if ch in string.ascii_letters or ch == "_":
            name = self.read_while(lambda c: c in string.ascii_letters + string.digits + "_")
            return Token("name", name, start)
        if ch in self.OPERATORS:
            return Token("op", self.input.next(), start)
        raise ParseError(f"unexpected character {ch!r}", start)

    def read_number(self, start: int) -> Token:
        text = self.read_while(lambda c: c in string.digits)
        if not self.input.eof() and self.input.peek() == "/":
            self.input.next()
            denominator = self.read_while(lambda c: c in string.digits)
            if not denominator:
                raise ParseError("expected denominator after '/'", self.input.pos)
            if int(denominator) == 0:
                raise ParseError("zero denominator", start)
            text = f"{text}/{denominator}"
        return Token("number", text, start)


class Parser:
    def __init__(
        self,
        text: str,
        ring: GradedRing,
        bindings: Optional[Mapping[str, Polynomial]] = None,
    ) -> None:
        self.tokens = Tokenizer(text)
        self.ring = ring
        self.bindings = dict(bindings or {})
        for name, value in self.bindings.items():
            if value.ring != ring:
                raise ValueError(f"binding {name!r} is not in the parsing ring")

    def parse(self) -> Polynomial:
        result = self.expr()
        token = self.tokens.peek()
        if token.kind != "end":
            raise ParseError(f"expected operator, found {token.text!r}", token.position)
        return result

    def expect(self, text: str) -> Token:
        token = self.tokens.next()
        if token.kind != "op" or token.text != text:
            found = token.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", token.position)
        return token

    def is_op(self, *ops: str) -> bool:
        token = self.tokens.peek()
        return token.kind == "op" and token.text in ops

    def expr(self) -> Polynomial:
        result = self.term()
        while self.is_op("+", "-"):
            op = self.tokens.next().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.is_op("*"):
            self.tokens.next()
            result = result * self.unary()
        return result

    def unary(self) -> Polynomial:
        if self.is_op("-"):
            self.tokens.next()
            return -self.unary()
        if self.is_op("+"):
            self.tokens.next()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.is_op("^"):
            self.tokens.next()
            token = self.tokens.next()
            if token.kind != "number" or "/" in token.text:
                raise ParseError("exponent must be a non-negative integer", token.position)
            return base ** int(token.text)
        return base

    def atom(self) -> Polynomial:
        token = self.tokens.next()
        if token.kind == "number":
            numerator, _, denominator = token.text.partition("/")
            return self.ring.constant(QQ(int(numerator), int(denominator or 1)))
        if token.kind == "name":
            if token.text in self.bindings:
                return self.bindings[token.text]
            if token.text not in self.ring:
                raise UnknownVariableError(f"unknown variable {token.text!r}", token.position)
            return self.ring.gen(token.text)
        if token.kind == "op" and token.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = token.text or "end of input"
        raise ParseError(f"unexpected {found!r}", token.position)


def parse(
    text: str,
    ring: GradedRing,
    bindings: Optional[Mapping[str, Polynomial]] = None,
) -> Polynomial:
    """
    Parse polynomial text in ``ring``.

    Parameters
    ----
    text        Polynomial text: rationals, variable names, ``+ - * ^ ( )``.
    ring        Ambient ring; every name must be a ring variable or a binding.
    bindings    Abbreviations expanded in place, e.g. ``{"xi": u + v}``.

    Returns
    ----
    The parsed polynomial.
    """
    return Parser(text, ring, bindings).parse()
