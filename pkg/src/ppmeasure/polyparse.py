"""Parsing and rendering of polynomial text.

Two forms are accepted:

* a comma separated coefficient list, ascending: ``"0,3,2,1"``
* an expression: ``"x^3+2x^2+3x"`` with grammar
  ``expr := ['-'] term (('+' | '-') term)*``,
  ``term := [coef]['*']['x'['^'exp]]``

Over prime fields coefficients are reduced mod p; over extension fields they
are element codes and must lie in [0, q).
"""

from __future__ import annotations

from .errors import CoefficientOutOfRangeError, ParseError
from .field import FieldCtx
from .permpoly import PermPoly


def _coef(field: FieldCtx, value: int, negative: bool) -> int:
    if field.k == 1:
        c = value % field.p
    else:
        if not 0 <= value < field.q:
            raise CoefficientOutOfRangeError(f"{value} is not an element code of F_{field.q}")
        c = value
    return field.neg(c) if negative else c


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def number(self) -> int | None:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos]) if self.pos > start else None


def _parse_expr(text: str, field: FieldCtx) -> list[int]:
    lx = _Lexer(text)
    terms: dict[int, int] = {}
    negative = False
    if lx.peek() == "-":
        lx.take()
        negative = True
    while True:
        start = lx.pos
        coef = lx.number()
        if lx.peek() == "*":
            if coef is None:
                raise ParseError("unexpected '*'", lx.pos)
            lx.take()
            if lx.peek() != "x":
                raise ParseError("expected 'x' after '*'", lx.pos)
        exp = 0
        if lx.peek() == "x":
            lx.take()
            exp = 1
            if lx.peek() == "^":
                lx.take()
                exp = lx.number()
                if exp is None:
                    lx.skip()
                    raise ParseError("expected exponent", lx.pos)
        elif coef is None:
            lx.skip()
            raise ParseError("expected term", max(lx.pos, start))
        c = _coef(field, 1 if coef is None else coef, negative)
        terms[exp] = field.add(terms.get(exp, 0), c)
        nxt = lx.peek()
        if nxt == "":
            break
        if nxt not in "+-":
            raise ParseError(f"unexpected {nxt!r}", lx.pos)
        lx.take()
        negative = nxt == "-"
    top = max(terms) if terms else 0
    return [terms.get(e, 0) for e in range(top + 1)]


def parse_poly(text: str, field: FieldCtx) -> PermPoly:
    """Parse ``text`` into a polynomial over ``field`` (reduced mod x^q - x).

    >>> from ppmeasure.field import make_field
    >>> parse_poly("x^3+2x^2+3x", make_field(5)).coeffs
    (0, 3, 2, 1)
    """
    if not text or not text.strip():
        raise ParseError("empty polynomial", 0)
    if "," in text or text.strip().lstrip("-").isdigit():
        coeffs = []
        offset = 0
        for part in text.split(","):
            s = part.strip()
            try:
                v = int(s)
            except ValueError:
                raise ParseError(f"bad coefficient {s!r}", offset) from None
            coeffs.append(_coef(field, abs(v), v < 0))
            offset += len(part) + 1
    else:
        coeffs = _parse_expr(text, field)
    return PermPoly.from_coeffs(field, coeffs)


def render_coeffs(f: PermPoly) -> str:
    return ",".join(map(str, f.coeffs)) or "0"


def render_expr(f: PermPoly) -> str:
    parts = []
    for e in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
            continue
        mono = "x" if e == 1 else f"x^{e}"
        parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts) or "0"
