"""Exact arithmetic in real Clifford algebras Cl(p, q).

Basis blades are bitmasks over the generators: bit ``i`` set means the
generator ``e_i`` is a factor, factors taken in ascending order.  A
:class:`Multivector` is a sparse map from blade masks to coefficients.
Coefficients are :class:`fractions.Fraction` for exact work; floats are
accepted so the same type can carry numerically evaluated fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Number, Rational
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

MAX_GENERATORS = 16


class SignatureMismatch(ValueError):
    """Operands belong to different algebras."""


class GradeError(ValueError):
    """An operand does not have the grade an operation requires."""


@dataclass(frozen=True)
class Signature:
    """Metric signs of the generators ``e_0 .. e_{n-1}``.

    Generator labels shown to users start at 0 when the first generator is
    timelike (sign -1, the spacetime-algebra layout ``-+++``) and at 1
    otherwise (``++`` labels its generators e1, e2).
    """

    signs: tuple[int, ...]
    negative_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        signs = tuple(int(s) for s in self.signs)
        if not 1 <= len(signs) <= MAX_GENERATORS:
            raise ValueError(
                f"need between 1 and {MAX_GENERATORS} generators, got {len(signs)}"
            )
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"metric signs must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)
        neg = 0
        for i, s in enumerate(signs):
            if s < 0:
                neg |= 1 << i
        object.__setattr__(self, "negative_mask", neg)

    @classmethod
    def from_string(cls, text: str) -> "Signature":
        """Parse a sign string such as ``"-+++"``."""
        text = "".join(text.split())
        if not text or set(text) - {"+", "-"}:
            raise ValueError(f"signature must be a string of '+'/'-', got {text!r}")
        return cls(tuple(1 if c == "+" else -1 for c in text))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def base(self) -> int:
        """Label of the first generator (0 or 1)."""
        return 0 if self.signs[0] < 0 else 1

    @property
    def dimension(self) -> int:
        return 1 << self.n

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def index(self, label: int) -> int:
        """Convert a user-facing generator label to a bit index."""
        i = label - self.base
        if not 0 <= i < self.n:
            raise ValueError(
                f"generator label {label} out of range for signature {self}"
            )
        return i

    def blade_label(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "^".join(f"e{i + self.base}" for i in bits(mask))

    def masks(self, grade: int | None = None) -> list[int]:
        """All blade masks, ordered by grade and then by index tuple."""
        out = [m for m in range(self.dimension) if grade is None or grade_of(m) == grade]
        out.sort(key=blade_sort_key)
        return out

    # convenience constructors

    def scalar(self, value=1) -> "Multivector":
        return Multivector(self, {0: value})

    def e(self, *labels: int) -> "Multivector":
        """Product of generators given by label, e.g. ``sig.e(0, 1)``."""
        out = self.scalar(1)
        for label in labels:
            out = out * Multivector(self, {1 << self.index(label): 1})
        return out

    def pseudoscalar(self) -> "Multivector":
        return Multivector(self, {self.dimension - 1: 1})


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def grade_of(mask: int) -> int:
    return mask.bit_count()


def blade_sort_key(mask: int) -> tuple[int, list[int]]:
    return (grade_of(mask), bits(mask))


@lru_cache(maxsize=1 << 16)
def _reorder_sign(a: int, b: int) -> int:
    # transpositions needed to merge the factors of a and b into ascending order
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: ``e_a e_b = coef * e_out``."""
    sign = _reorder_sign(a, b)
    if (a & b & sig.negative_mask).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def _coerce(c):
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, float)):
        return c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, Number):
        return float(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def multiply_terms(
    sig: Signature,
    xs: Mapping,
    ys: Mapping,
    select: Callable[[int, int], bool] | None = None,
) -> dict:
    """Bilinear blade product of two coefficient maps.

    Coefficients only need ``*``, ``+`` and unary ``-``, so polynomial
    coefficients work as well as numbers.  ``select(a, b)`` filters blade
    pairs; zero results are left in the output for the caller to prune.
    """
    out: dict = {}
    for a, ca in xs.items():
        for b, cb in ys.items():
            if select is not None and not select(a, b):
                continue
            sign, m = blade_product(a, b, sig)
            c = ca * cb
            if sign < 0:
                c = -c
            if m in out:
                out[m] = out[m] + c
            else:
                out[m] = c
    return out


def select_dot(a: int, b: int) -> bool:
    ga, gb = grade_of(a), grade_of(b)
    if ga == 0 or gb == 0:
        return False
    return grade_of(a ^ b) == abs(ga - gb)


def select_wedge(a: int, b: int) -> bool:
    return a & b == 0


def format_terms(sig: Signature, terms: Mapping, show: Callable = str) -> str:
    if not terms:
        return "0"
    parts = []
    for mask in sorted(terms, key=blade_sort_key):
        c = terms[mask]
        if mask and c == 1:
            text = sig.blade_label(mask)
        elif mask and c == -1:
            text = "-" + sig.blade_label(mask)
        elif mask:
            text = f"{show(c)}*{sig.blade_label(mask)}"
        else:
            text = show(c)
        parts.append(text)
    return " + ".join(parts).replace("+ -", "- ")


class Multivector:
    """Immutable sparse element of Cl(p, q)."""

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping | Iterable = ()):
        clean = {}
        limit = sig.dimension
        for mask, c in dict(terms).items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} invalid for signature {sig}")
            c = _coerce(c)
            if c:
                clean[mask] = c
        self.sig = sig
        self._terms = clean

    @property
    def terms(self) -> Mapping[int, Fraction | float]:
        return MappingProxyType(self._terms)

    def __getitem__(self, mask: int):
        return self._terms.get(mask, Fraction(0))

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: blade_sort_key(kv[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "Multivector") -> None:
        if other.sig != self.sig:
            raise SignatureMismatch(f"cannot combine Cl({self.sig}) with Cl({other.sig})")

    def _promote(self, other) -> "Multivector | None":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, Number):
            return Multivector(self.sig, {0: other})
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = Multivector(self.sig, {0: other})
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.sig, frozenset(self._terms.items())))

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.sig, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector(self.sig, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, Number):
            c = _coerce(other)
            return Multivector(self.sig, {m: v * c for m, v in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if not isinstance(other, Number):
            return NotImplemented
        c = _coerce(other)
        inv = 1 / c if isinstance(c, float) else Fraction(1) / c
        return self * inv

    def __xor__(self, other):
        return wedge(self, other)

    def __or__(self, other):
        return dot(self, other)

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def grades(self) -> list[int]:
        return sorted({grade_of(m) for m in self._terms})

    def scalar_part(self):
        return self._terms.get(0, Fraction(0))

    def max_abs(self) -> float:
        """Largest absolute coefficient (0 for the zero multivector)."""
        return max((abs(float(c)) for c in self._terms.values()), default=0.0)

    def __repr__(self) -> str:
        return f"Multivector({self.sig}, {format_terms(self.sig, self._terms)})"

    def __str__(self) -> str:
        return format_terms(self.sig, self._terms)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    return Multivector(x.sig, multiply_terms(x.sig, x._terms, y._terms))


def grade_project(x: Multivector, k: int) -> Multivector:
    if not 0 <= k <= x.sig.n:
        raise GradeError(f"grade {k} out of range 0..{x.sig.n}")
    return Multivector(x.sig, {m: c for m, c in x._terms.items() if grade_of(m) == k})


def dot(x: Multivector, y: Multivector) -> Multivector:
    """Grade-lowering product; zero whenever either factor is a scalar."""
    x._check(y)
    return Multivector(x.sig, multiply_terms(x.sig, x._terms, y._terms, select_dot))


def wedge(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    return Multivector(x.sig, multiply_terms(x.sig, x._terms, y._terms, select_wedge))


def reverse(x: Multivector) -> Multivector:
    out = {}
    for m, c in x._terms.items():
        k = grade_of(m)
        out[m] = -c if (k * (k - 1) // 2) & 1 else c
    return Multivector(x.sig, out)


def grade_involution(x: Multivector) -> Multivector:
    return Multivector(x.sig, {m: (-c if grade_of(m) & 1 else c) for m, c in x._terms.items()})


def even_part(x: Multivector) -> Multivector:
    return Multivector(x.sig, {m: c for m, c in x._terms.items() if not grade_of(m) & 1})


def odd_part(x: Multivector) -> Multivector:
    return Multivector(x.sig, {m: c for m, c in x._terms.items() if grade_of(m) & 1})


@lru_cache(maxsize=None)
def pseudoscalar_inverse(sig: Signature) -> Multivector:
    """``I^-1 = reverse(I) / (I reverse(I))``; always equal to +I or -I."""
    i = sig.pseudoscalar()
    rev = reverse(i)
    norm = (i * rev).scalar_part()
    return rev / norm


def dual(x: Multivector) -> Multivector:
    """Right multiplication by the inverse pseudoscalar."""
    return x * pseudoscalar_inverse(x.sig)
