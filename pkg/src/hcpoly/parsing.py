"""Text grammar for elements and polynomials, plus the matching printer.

    poly     := term (('+'|'-') term)*
    term     := coeffLit? ('t' ('^' uint)?)?
    coeffLit := scalar | '(' scalar (('+'|'-') scalar)* ')'
    scalar   := decimal? unit?
    unit     := 'i' | 'j' | 'k' | 'e1' .. 'e7'

Whitespace is insignificant.  Decimals are plain (no exponent notation, so
``0.5e7`` is half of e7, not 5e6).  An element literal is the polynomial
grammar without any t term.  Parse errors carry the byte offset and the
token set that would have been accepted.
"""

from __future__ import annotations

import re

import numpy as np

from .algebra import Algebra, Element, get_algebra
from .polynomial import Polynomial

__all__ = [
    "ParseError",
    "parse_element",
    "parse_polynomial",
    "format_element",
    "format_polynomial",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(expected)
        suffix = f" at offset {position}"
        if expected:
            suffix += f" (expected {', '.join(expected)})"
        super().__init__(message + suffix)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<unit>e\d+|[ijk])
  | (?P<t>t)
  | (?P<caret>\^)
  | (?P<plus>\+)
  | (?P<minus>-)
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append((kind, match.group(), match.start()))
        pos = match.end()
    tokens.append(("end", "", len(src)))
    return tokens


def _unit_index(algebra: Algebra, name: str, position: int) -> int:
    aliases = {"i": 1, "j": 2, "k": 3}
    if name in aliases:
        index = aliases[name]
    else:
        index = int(name[1:])
    if not 1 <= index <= algebra.imag_dim:
        raise ParseError(
            f"unit {name!r} is not available in algebra {algebra.name}", position
        )
    return index


class _Parser:
    def __init__(self, src: str, algebra: Algebra):
        self.src = src
        self.algebra = algebra
        self.tokens = _tokenize(src)
        self.cursor = 0

    def peek(self):
        return self.tokens[self.cursor]

    def advance(self):
        token = self.tokens[self.cursor]
        self.cursor += 1
        return token

    def expect(self, kind: str, expected: str):
        token = self.peek()
        if token[0] != kind:
            raise ParseError(
                f"unexpected {token[1]!r}" if token[0] != "end" else "unexpected end of input",
                token[2],
                (expected,),
            )
        return self.advance()

    # scalar := decimal? unit?
    def scalar(self, sign: float) -> np.ndarray:
        coords = np.zeros(self.algebra.dim)
        token = self.peek()
        value = None
        if token[0] == "num":
            self.advance()
            value = float(token[1])
            token = self.peek()
        if token[0] == "unit":
            self.advance()
            index = _unit_index(self.algebra, token[1], token[2])
            coords[index] = sign * (1.0 if value is None else value)
            return coords
        if value is None:
            raise ParseError(
                f"unexpected {token[1]!r}" if token[0] != "end" else "unexpected end of input",
                token[2],
                ("number", "unit"),
            )
        coords[0] = sign * value
        return coords

    def scalar_sum(self, outer_sign: float) -> np.ndarray:
        # ('+'|'-')? scalar (('+'|'-') scalar)*
        local = 1.0
        if self.peek()[0] in ("plus", "minus"):
            if self.advance()[0] == "minus":
                local = -1.0
        coords = self.scalar(outer_sign * local)
        while self.peek()[0] in ("plus", "minus"):
            local = 1.0 if self.advance()[0] == "plus" else -1.0
            coords = coords + self.scalar(outer_sign * local)
        return coords

    def coeff_literal(self, sign: float) -> np.ndarray:
        if self.peek()[0] == "lparen":
            self.advance()
            coords = self.scalar_sum(sign)
            self.expect("rparen", "')'")
            return coords
        return self.scalar(sign)

    def term(self, sign: float):
        """Returns (coords, power)."""
        token = self.peek()
        coords = None
        if token[0] in ("num", "unit", "lparen"):
            coords = self.coeff_literal(sign)
        power = 0
        if self.peek()[0] == "t":
            self.advance()
            power = 1
            if self.peek()[0] == "caret":
                self.advance()
            # '^' must be followed by an unsigned integer exponent
                exp = self.expect("num", "integer exponent")
                if "." in exp[1]:
                    raise ParseError("exponent must be an integer", exp[2])
                power = int(exp[1])
        if coords is None:
            if power == 0:
                raise ParseError(
                    f"unexpected {token[1]!r}" if token[0] != "end" else "unexpected end of input",
                    token[2],
                    ("coefficient", "'t'"),
                )
            coords = np.zeros(self.algebra.dim)
            coords[0] = sign
        return coords, power

    def polynomial(self) -> dict[int, np.ndarray]:
        terms: dict[int, np.ndarray] = {}
        sign = 1.0
        if self.peek()[0] in ("plus", "minus"):
            sign = 1.0 if self.advance()[0] == "plus" else -1.0
        coords, power = self.term(sign)
        terms[power] = terms.get(power, np.zeros(self.algebra.dim)) + coords
        while self.peek()[0] in ("plus", "minus"):
            sign = 1.0 if self.advance()[0] == "plus" else -1.0
            coords, power = self.term(sign)
            terms[power] = terms.get(power, np.zeros(self.algebra.dim)) + coords
        self.expect("end", "'+', '-', or end of input")
        return terms


def parse_polynomial(src: str, algebra, side: str = "left") -> Polynomial:
    algebra = get_algebra(algebra)
    parser = _Parser(src, algebra)
    terms = parser.polynomial()
    top = max(terms)
    rows = np.zeros((top + 1, algebra.dim))
    for power, coords in terms.items():
        rows[power] = coords
    return Polynomial(algebra, rows, side)


def parse_element(src: str, algebra) -> Element:
    algebra = get_algebra(algebra)
    parser = _Parser(src, algebra)
    terms = parser.polynomial()
    bad = [p for p in terms if p > 0 and terms[p].any()]
    if bad:
        raise ParseError("element literals cannot contain 't'", 0)
    return Element(algebra, terms.get(0, np.zeros(algebra.dim)))


# ---------------------------------------------------------------------------
# printing (emits the same grammar)


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _format_scalar(value: float, unit: str) -> str:
    if unit and abs(value) == 1.0:
        return unit
    return _format_number(abs(value)) + unit


def format_element(element: Element) -> str:
    parts = []
    names = element.algebra.unit_names
    for index, value in enumerate(element.coords):
        if value == 0.0:
            continue
        text = _format_scalar(value, names[index])
        if not parts:
            parts.append(("-" if value < 0 else "") + text)
        else:
            parts.append(("- " if value < 0 else "+ ") + text)
    return " ".join(parts) if parts else "0"


def _format_coeff(coords: np.ndarray, names, with_t: bool) -> str:
    nonzero = [idx for idx, v in enumerate(coords) if v != 0.0]
    if len(nonzero) == 1:
        idx = nonzero[0]
        value = coords[idx]
        sign = "-" if value < 0 else ""
        if with_t and idx == 0 and abs(value) == 1.0:
            return sign  # bare t / -t
        return sign + _format_scalar(value, names[idx])
    inner = []
    for idx in nonzero:
        value = coords[idx]
        text = _format_scalar(value, names[idx])
        if not inner:
            inner.append(("-" if value < 0 else "") + text)
        else:
            inner.append(("-" if value < 0 else "+") + text)
    return "(" + "".join(inner) + ")"


def format_polynomial(f: Polynomial) -> str:
    if f.side != "left":
        raise ValueError("the text form is defined for left polynomials")
    names = f.algebra.unit_names
    if f.degree < 0:
        return "0"
    parts = []
    for power in range(f.degree, -1, -1):
        coords = f.coeffs[power]
        if not coords.any():
            continue
        text = _format_coeff(coords, names, with_t=power > 0)
        if power >= 2:
            text += f"t^{power}"
        elif power == 1:
            text += "t"
        if not parts:
            parts.append(text)
        else:
            if text.startswith("-"):
                parts.append("- " + text[1:])
            else:
                parts.append("+ " + text)
    return " ".join(parts)
