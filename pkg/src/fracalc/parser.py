"""Parser and formatter for generalized-polynomial expressions in ``x``.

Grammar (whitespace allowed between tokens)::

    expr     := [sign] term (("+" | "-") term)*
    term     := [number "*"] atom | number
    atom     := "x" ["^" exponent] | trig
    trig     := ("sin" | "cos") "(" "x" ["+" number] ")"
    exponent := number | "-" number
    number   := decimal literal with optional fraction and exponent part
              | "pi" | "e"

The optional leading sign and the ``+ phase`` inside a trig call are
extensions over the bare ``sin(x)``/``cos(x)`` form; :func:`format` needs them
to print negative leading coefficients and phase-shifted trig terms.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import List, Optional

from fracalc.errors import DomainError, FracalcError
from fracalc.symbolic import GenExpr, PowerTerm, TrigBase, TrigTerm

__all__ = ["SourceSpan", "ParseError", "ExponentError", "parse", "format_expr"]

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_]+")
_CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    text: str

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


class ParseError(FracalcError):
    """Malformed expression text; ``span`` points at the offending input."""

    def __init__(self, span: SourceSpan, message: str, expected: Optional[List[str]] = None):
        self.span = span
        self.message = message or "parse error"
        self.expected = list(expected or [])
        super().__init__(f"{self.message} at offset {span.start}")


class ExponentError(DomainError):
    """An exponent at or below -1 was written; ``span`` locates it."""

    def __init__(self, span: SourceSpan, message: str):
        self.span = span
        super().__init__(message)


@dataclass
class _Token:
    kind: str  # number, ident, op, end
    text: str
    start: int
    end: int
    value: float = field(default=0.0)


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(_Token("number", m.group(), i, m.end(), float(m.group())))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(), i, m.end()))
            i = m.end()
            continue
        if ch in "+-*^()":
            tokens.append(_Token("op", ch, i, i + 1))
            i += 1
            continue
        raise ParseError(SourceSpan(i, i + 1, ch), f"unexpected character {ch!r}")
    tokens.append(_Token("end", "", n, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, expected: List[str], tok: Optional[_Token] = None):
        tok = tok or self.tok
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ParseError(
            SourceSpan(tok.start, tok.end, self.text[tok.start:tok.end]),
            f"expected {' or '.join(expected)}, found {found}",
            expected,
        )

    def is_op(self, ch: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == ch

    def expect_op(self, ch: str):
        if not self.is_op(ch):
            self.fail([repr(ch)])
        self.advance()

    def number(self) -> float:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return t.value
        if t.kind == "ident" and t.text in _CONSTANTS:
            self.advance()
            return _CONSTANTS[t.text]
        self.fail(["number"])

    def starts_number(self) -> bool:
        t = self.tok
        return t.kind == "number" or (t.kind == "ident" and t.text in _CONSTANTS)

    def parse(self) -> GenExpr:
        powers, trig = [], []
        sign = 1.0
        if self.is_op("-") or self.is_op("+"):
            sign = -1.0 if self.advance().text == "-" else 1.0
        self.term(sign, powers, trig)
        while self.is_op("+") or self.is_op("-"):
            sign = -1.0 if self.advance().text == "-" else 1.0
            self.term(sign, powers, trig)
        if self.tok.kind != "end":
            self.fail(["'+'", "'-'", "end of input"])
        return GenExpr.from_terms(powers, trig)

    def term(self, sign: float, powers: list, trig: list):
        if self.starts_number():
            coeff = self.number()
            if not self.is_op("*"):
                if self.tok.kind == "ident":
                    self.fail(["'*'"])
                powers.append(PowerTerm(sign * coeff, 0.0))
                return
            self.advance()
            self.atom(sign * coeff, powers, trig)
        elif self.tok.kind == "ident":
            self.atom(sign, powers, trig)
        else:
            self.fail(["number", "'x'", "'sin'", "'cos'"])

    def atom(self, coeff: float, powers: list, trig: list):
        t = self.tok
        if t.kind != "ident":
            self.fail(["'x'", "'sin'", "'cos'"])
        if t.text == "x":
            self.advance()
            exponent = 1.0
            if self.is_op("^"):
                self.advance()
                exp_tok = self.tok
                if self.is_op("-"):
                    self.advance()
                    exponent = -self.number()
                else:
                    exponent = self.number()
                if exponent <= -1.0:
                    end = self.tokens[self.pos - 1].end
                    raise ExponentError(
                        SourceSpan(exp_tok.start, end, self.text[exp_tok.start:end]),
                        f"exponent {exponent!r} at offset {exp_tok.start} must exceed -1",
                    )
            powers.append(PowerTerm(coeff, exponent))
        elif t.text in ("sin", "cos"):
            self.advance()
            self.expect_op("(")
            if not (self.tok.kind == "ident" and self.tok.text == "x"):
                self.fail(["'x'"])
            self.advance()
            phase = 0.0
            if self.is_op("+"):
                self.advance()
                phase = self.number()
            self.expect_op(")")
            trig.append(TrigTerm(coeff, TrigBase(t.text), phase))
        else:
            self.fail(["'x'", "'sin'", "'cos'"])


def parse(text: str) -> GenExpr:
    """Parse expression text into a canonical :class:`GenExpr`.

    Raises :class:`ParseError` for malformed text and :class:`ExponentError`
    (a :class:`~fracalc.errors.DomainError`) for an exponent at or below -1.
    """
    return _Parser(text).parse()


def _num(v: float) -> str:
    return f"{v:.17g}"


def _signed_chunks(expr: GenExpr):
    for t in reversed(expr.power_terms):
        mag = abs(t.coeff)
        if t.exponent == 0.0:
            body = _num(mag)
        elif mag == 1.0:
            body = f"x^{_num(t.exponent)}"
        else:
            body = f"{_num(mag)}*x^{_num(t.exponent)}"
        yield t.coeff < 0, body
    for t in expr.trig_terms:
        mag = abs(t.coeff)
        arg = "x" if t.phase == 0.0 else f"x + {_num(t.phase)}"
        call = f"{t.base.value}({arg})"
        yield t.coeff < 0, call if mag == 1.0 else f"{_num(mag)}*{call}"


def format_expr(expr: GenExpr) -> str:
    """Canonical text: power terms by descending exponent, then trig terms.

    Numbers carry 17 significant digits, so ``parse(format_expr(e)) == e``.
    """
    parts = []
    for i, (neg, body) in enumerate(_signed_chunks(expr)):
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"


format = format_expr
