"""Text form of differential polynomials.

Grammar::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" uint)?
    base   := rational | "G" | var | "(" expr ")"
    var    := "t" uint? | "k" uint?

``t`` / ``t0`` is the generator itself and ``tN`` its N-th derivative; the
letter ``k`` is used for the pseudo-curvature generator.  ``format_poly``
emits the canonical form, which ``parse`` reads back unchanged.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .diffalg import KAPPA, TAU, DiffPoly, Generator

__all__ = ["ExpressionSyntaxError", "UnknownSymbolError", "parse", "format_poly"]


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text


class UnknownSymbolError(ExpressionSyntaxError):
    pass


class _Tok(NamedTuple):
    kind: str  # NUM, G, VAR, OP, EOF
    value: object
    pos: int


_NUM = re.compile(r"\d+(?:/\d+)?")
_VAR = re.compile(r"([tk])(\d*)")
_LETTERS = {"t": TAU, "k": KAPPA}


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            m = _NUM.match(text, i)
            toks.append(_Tok("NUM", m.group(), i))
            i = m.end()
        elif ch == "G":
            toks.append(_Tok("G", None, i))
            i += 1
        elif ch in "tk":
            m = _VAR.match(text, i)
            order = int(m.group(2)) if m.group(2) else 0
            toks.append(_Tok("VAR", (_LETTERS[ch], order), i))
            i = m.end()
        elif ch in "+-*^()":
            toks.append(_Tok("OP", ch, i))
            i += 1
        else:
            raise UnknownSymbolError(f"unknown symbol {ch!r}", i, text)
    toks.append(_Tok("EOF", None, n))
    return toks


class _Parser:
    def __init__(self, text: str, generator: Generator | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        gens = {t.value[0]: t.pos for t in self.toks if t.kind == "VAR"}
        if generator is None:
            generator = min(gens, key=gens.get) if gens else TAU
        for g, pos in gens.items():
            if g is not generator:
                first = next(t.pos for t in self.toks if t.kind == "VAR" and t.value[0] is g)
                raise UnknownSymbolError(
                    f"variable {g.letter!r} does not belong to generator {generator.name}", first, text
                )
        self.gen = generator

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str):
        raise ExpressionSyntaxError(message, self.tok.pos, self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "OP" and self.tok.value == op:
            self.i += 1
            return True
        return False

    def expr(self) -> DiffPoly:
        negate = self.accept("-")
        value = self.term()
        if negate:
            value = -value
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> DiffPoly:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> DiffPoly:
        value = self.base()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "NUM" or "/" in tok.value:
                self.error("expected unsigned integer exponent")
            self.i += 1
            value = value ** int(tok.value)
        return value

    def base(self) -> DiffPoly:
        tok = self.tok
        if tok.kind == "NUM":
            self.i += 1
            return DiffPoly.const(Fraction(tok.value), self.gen)
        if tok.kind == "G":
            self.i += 1
            return DiffPoly.G(self.gen)
        if tok.kind == "VAR":
            self.i += 1
            return DiffPoly.var(tok.value[1], self.gen)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return value
        if tok.kind == "EOF":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.value!r}")


def parse(text: str, generator: Generator | None = None) -> DiffPoly:
    """Parse ``text`` into a :class:`DiffPoly`.

    The generator is inferred from the variable letters unless given; an
    expression without variables defaults to ``TAU``.
    """
    p = _Parser(text, generator)
    value = p.expr()
    if p.tok.kind != "EOF":
        p.error(f"unexpected {p.tok.value!r}")
    return value


def _var(letter: str, order: int, power: int) -> str:
    name = letter if order == 0 else f"{letter}{order}"
    return name if power == 1 else f"{name}^{power}"


def format_poly(p: DiffPoly) -> str:
    letter = p.generator.letter
    pieces = []
    for mono, gexp, c in p.items():
        factors = []
        mag = abs(c)
        if mag != 1 or (gexp == 0 and not mono):
            factors.append(str(mag))
        if gexp:
            factors.append("G" if gexp == 1 else f"G^{gexp}")
        factors.extend(_var(letter, m, e) for m, e in enumerate(mono) if e)
        body = "*".join(factors)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces) if pieces else "0"
