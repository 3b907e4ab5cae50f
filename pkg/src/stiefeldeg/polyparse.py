"""Text <-> Polynomial conversion.

Grammar (whitespace insignificant, no implicit multiplication)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-'* base ('^' natural)?
    base     := rational | variable | '(' expr ')'
    rational := integer ('/' positive-integer)?

Unary minus sits below ``^``, so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .polycore import GREVLEX, Polynomial, Ring

__all__ = ["ParseError", "parse_poly", "format_poly", "DEFAULT_MAX_DEPTH"]

DEFAULT_MAX_DEPTH = 256
MAX_EXPONENT = 10_000

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"\s*(?:(?P<num>[0-9]+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    """Syntax error at byte ``offset`` of the input."""

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class _Tok:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            ch = text[pos]
            raise ParseError(_byte_offset(text, pos), "number, variable, operator or parenthesis", repr(ch))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), _byte_offset(text, start)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(text, n)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring, max_depth: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.index = {v: k for k, v in enumerate(ring.variables)}
        self.max_depth = max_depth
        self.depth = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def _found(self, tok: _Tok) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def fail(self, expected: str, tok: _Tok | None = None):
        tok = tok or self.cur
        raise ParseError(tok.offset, expected, self._found(tok))

    def accept(self, op: str) -> bool:
        if self.cur.kind == "op" and self.cur.text == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.cur.kind != "end":
            self.fail("operator or end of input")
        return p

    def expr(self) -> Polynomial:
        # sum of products in one frame; keeps recursion at two frames per paren level
        acc = None
        sign = 1
        while True:
            prod = self.factor()
            while self.accept("*"):
                prod = prod * self.factor()
            if acc is None:
                acc = prod
            else:
                acc = acc + prod if sign > 0 else acc - prod
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return acc

    def factor(self) -> Polynomial:
        negate = False
        while self.accept("-"):
            negate = not negate
        tok = self.cur
        if tok.kind == "num":
            self.i += 1
            num = int(tok.text)
            if self.accept("/"):
                dtok = self.cur
                if dtok.kind != "num":
                    self.fail("positive integer denominator")
                self.i += 1
                den = int(dtok.text)
                if den == 0:
                    self.fail("nonzero denominator", dtok)
                b = self.ring.const(Fraction(num, den))
            else:
                b = self.ring.const(num)
        elif tok.kind == "name":
            if tok.text not in self.index:
                self.fail(f"one of the variables {list(self.ring.variables)}")
            self.i += 1
            b = self.ring.gen(self.index[tok.text])
        elif self.accept("("):
            self.depth += 1
            if self.depth > self.max_depth:
                self.fail(f"nesting depth at most {self.max_depth}", tok)
            b = self.expr()
            self.depth -= 1
            if not self.accept(")"):
                self.fail("')'")
        else:
            self.fail("number, variable, '-' or '('")
        if self.accept("^"):
            etok = self.cur
            if etok.kind != "num":
                self.fail("natural-number exponent")
            self.i += 1
            k = int(etok.text)
            if k > MAX_EXPONENT:
                self.fail(f"exponent at most {MAX_EXPONENT}", etok)
            b = b**k
        return -b if negate else b


def parse_poly(text: str, variables: Sequence[str] | Ring, max_depth: int = DEFAULT_MAX_DEPTH) -> Polynomial:
    """Parse ``text`` into a Polynomial over ``variables``; raises ParseError."""
    ring = variables if isinstance(variables, Ring) else Ring(variables)
    for v in ring.variables:
        if not isinstance(v, str) or not _VAR_RE.match(v):
            raise ValueError(f"invalid variable name {v!r}")
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(exc.start, "valid UTF-8", repr(bytes(text[exc.start : exc.start + 1]))) from None
    return _Parser(text, ring, max_depth).parse()


def _format_coeff(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(e, names) -> str:
    parts = []
    for name, a in zip(names, e):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_poly(p: Polynomial, order=GREVLEX) -> str:
    """Canonical text: terms largest-first, explicit ``*`` and ``^``, e.g. ``-75/2*z - 24``."""
    if p.is_zero():
        return "0"
    names = p.ring.variables
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(e, names)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
