"""Text format for multivector fields.

::

    # comments run to end of line; whitespace is insignificant
    signature -+++
    e0^e1 : 3/2*x1 - x2^2
    1     : x0*x3

Grammar::

    file     := header entry*
    header   := "signature" SIGN+              SIGN := "+" | "-"
    entry    := blade ":" poly
    blade    := "1" | "e"IDX ("^" "e"IDX)*     strictly ascending
    poly     := ["+"|"-"] term (("+"|"-") term)*
    term     := RATIONAL ("*" mono)? | mono
    mono     := VAR ("^" UINT)? ("*" VAR ("^" UINT)?)*
    VAR      := "x"IDX
    RATIONAL := ["+"|"-"] UINT ("/" UINT)?

The optional leading sign of ``poly`` lets a polynomial open with a
negative monomial (``-x2^2 + x1``), which is how the serializer writes it.

Generator and coordinate labels start at 0 when the first sign is ``-``
and at 1 otherwise (see :class:`ccrkit.algebra.Signature`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import Signature, blade_sort_key
from .fields import MultivectorField
from .poly import Polynomial


class FieldFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<kw>signature\b)
  | (?P<gen>e(?P<gen_idx>[0-9]+))
  | (?P<var>x(?P<var_idx>[0-9]+))
  | (?P<int>[0-9]+)
  | (?P<op>[-+*/^:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # kw, gen, var, int, op, eof
    text: str
    value: int | None
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise FieldFileError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind in ("gen_idx", "var_idx"):
            kind = kind.split("_")[0]
        chunk = m.group()
        if kind == "gen":
            tokens.append(Token("gen", chunk, int(m.group("gen_idx")), line, col))
        elif kind == "var":
            tokens.append(Token("var", chunk, int(m.group("var_idx")), line, col))
        elif kind == "int":
            tokens.append(Token("int", chunk, int(chunk), line, col))
        elif kind in ("kw", "op"):
            tokens.append(Token(kind, chunk, None, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", None, line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True)
class FieldDocument:
    sig: Signature
    entries: tuple[tuple[int, Polynomial], ...]

    @property
    def field(self) -> MultivectorField:
        return MultivectorField(self.sig, dict(self.entries))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0
        self.sig: Signature | None = None

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        return FieldFileError(message, tok.line, tok.col)

    def expect_op(self, op: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            found = tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        return self.advance()

    def is_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def document(self) -> FieldDocument:
        tok = self.peek()
        if tok.kind != "kw":
            raise self.error("file must start with a 'signature' header")
        self.advance()
        signs = []
        while self.is_op("+", "-"):
            signs.append(1 if self.advance().text == "+" else -1)
        if not signs:
            raise self.error("signature needs at least one '+' or '-'")
        try:
            self.sig = Signature(tuple(signs))
        except ValueError as exc:
            raise self.error(str(exc), tok) from None
        entries = []
        seen: dict[int, Token] = {}
        while self.peek().kind != "eof":
            start = self.peek()
            mask = self.blade()
            if mask in seen:
                first = seen[mask]
                raise self.error(
                    f"duplicate blade {self.sig.blade_label(mask)} (first at line {first.line})",
                    start,
                )
            seen[mask] = start
            self.expect_op(":")
            entries.append((mask, self.poly()))
        return FieldDocument(self.sig, tuple(entries))

    def _index(self, tok: Token, what: str) -> int:
        sig = self.sig
        i = tok.value - sig.base
        if not 0 <= i < sig.n:
            hi = sig.base + sig.n - 1
            raise self.error(
                f"{what} index {tok.value} out of range {sig.base}..{hi} for signature {sig}",
                tok,
            )
        return i

    def blade(self) -> int:
        tok = self.peek()
        if tok.kind == "int":
            if tok.value != 1:
                raise self.error(f"expected a blade ('1' or e<i>^...), found {tok.text!r}")
            self.advance()
            return 0
        if tok.kind != "gen":
            raise self.error(f"expected a blade ('1' or e<i>^...), found {tok.text or 'end of input'!r}")
        mask = 0
        last = -1
        while True:
            tok = self.advance()
            if tok.kind != "gen":
                raise self.error(f"expected a generator e<i>, found {tok.text!r}", tok)
            i = self._index(tok, "generator")
            if i <= last:
                raise self.error("blade indices must be strictly ascending", tok)
            last = i
            mask |= 1 << i
            if not self.is_op("^"):
                return mask
            self.advance()

    def poly(self) -> Polynomial:
        n = self.sig.n
        total = Polynomial(n)
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        total = total + self.term() * sign
        while self.is_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
            total = total + self.term() * sign
        return total

    def term(self) -> Polynomial:
        n = self.sig.n
        sign = 1
        if self.is_op("+", "-") and self.tokens[self.i + 1].kind == "int":
            sign = -1 if self.advance().text == "-" else 1
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            num = sign * tok.value
            den = 1
            if self.is_op("/"):
                self.advance()
                dtok = self.advance()
                if dtok.kind != "int":
                    raise self.error("expected an integer denominator", dtok)
                if dtok.value == 0:
                    raise self.error("zero denominator", dtok)
                den = dtok.value
            coef = Polynomial.constant(Fraction(num, den), n)
            if self.is_op("*"):
                self.advance()
                return coef * self.mono()
            return coef
        if tok.kind == "var":
            return self.mono()
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def mono(self) -> Polynomial:
        n = self.sig.n
        exps = [0] * n
        while True:
            tok = self.advance()
            if tok.kind != "var":
                raise self.error(f"expected a variable x<i>, found {tok.text or 'end of input'!r}", tok)
            i = self._index(tok, "coordinate")
            k = 1
            if self.is_op("^"):
                self.advance()
                ktok = self.advance()
                if ktok.kind != "int":
                    raise self.error("expected an integer exponent", ktok)
                k = ktok.value
            exps[i] += k
            if not self.is_op("*"):
                break
            self.advance()
        return Polynomial(n, {tuple(exps): 1})


def parse_field_file(text: str) -> FieldDocument:
    return _Parser(tokenize(text)).document()


def parse_field(text: str) -> MultivectorField:
    return parse_field_file(text).field


def read_field(path: str | Path) -> MultivectorField:
    return parse_field(Path(path).read_text())


def serialize_field_file(F: MultivectorField) -> str:
    """Canonical text: blades by grade then index, monomials by degree."""
    sig = F.sig
    lines = [f"signature {sig}"]
    for mask in sorted(F.comps, key=blade_sort_key):
        lines.append(f"{sig.blade_label(mask)} : {F.comps[mask].format(sig.base)}")
    return "\n".join(lines) + "\n"
