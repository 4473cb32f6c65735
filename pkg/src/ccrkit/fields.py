"""Multivector-valued fields and the vector derivative.

Two backends:

* :class:`MultivectorField` has exact polynomial coefficients and is
  differentiated formally.
* :class:`NumericField` wraps any pointwise evaluator and is differentiated
  by central differences.  It exists for fields that are not polynomial
  (exponential spinors).

The vector derivative uses the reciprocal frame,
``d = sum_i sigma_i e_i d/dx_i``, so that in Cl(3,1) it is the usual
``gamma^mu d_mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .algebra import (
    GradeError,
    Multivector,
    Signature,
    SignatureMismatch,
    blade_sort_key,
    grade_of,
    multiply_terms,
)
from .poly import Polynomial


class MultivectorField:
    """Immutable map from blade mask to coefficient polynomial."""

    __slots__ = ("sig", "_comps")

    def __init__(self, sig: Signature, comps: Mapping | Iterable = ()):
        clean: dict[int, Polynomial] = {}
        n = sig.n
        for mask, p in dict(comps).items():
            if not 0 <= mask < sig.dimension:
                raise ValueError(f"blade mask {mask} invalid for signature {sig}")
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(p, n)
            elif p.nvars != n:
                raise ValueError(f"polynomial has {p.nvars} coordinates, algebra has {n}")
            if p:
                clean[mask] = p
        self.sig = sig
        self._comps = clean

    @classmethod
    def lift(cls, mv: Multivector) -> "MultivectorField":
        """Constant field with value ``mv``."""
        return cls(mv.sig, {m: Polynomial.constant(c, mv.sig.n) for m, c in mv.terms.items()})

    @classmethod
    def scalar(cls, sig: Signature, p: Polynomial | int | Fraction) -> "MultivectorField":
        return cls(sig, {0: p})

    @classmethod
    def zero(cls, sig: Signature) -> "MultivectorField":
        return cls(sig)

    @property
    def comps(self) -> Mapping[int, Polynomial]:
        return MappingProxyType(self._comps)

    def __getitem__(self, mask: int) -> Polynomial:
        return self._comps.get(mask) or Polynomial(self.sig.n)

    def __iter__(self):
        return iter(sorted(self._comps.items(), key=lambda kv: blade_sort_key(kv[0])))

    def __bool__(self) -> bool:
        return bool(self._comps)

    def is_zero(self) -> bool:
        return not self._comps

    def grades(self) -> list[int]:
        return sorted({grade_of(m) for m in self._comps})

    def is_pure(self, k: int) -> bool:
        """True if every component has grade ``k`` (the zero field counts)."""
        return all(grade_of(m) == k for m in self._comps)

    def degree(self) -> int:
        return max((p.degree() for p in self._comps.values()), default=-1)

    def _coerce(self, other) -> "MultivectorField | None":
        if isinstance(other, MultivectorField):
            field = other
        elif isinstance(other, Multivector):
            field = MultivectorField.lift(other)
        elif isinstance(other, Polynomial):
            field = MultivectorField.scalar(self.sig, other)
        elif isinstance(other, (int, Rational)) and not isinstance(other, bool):
            field = MultivectorField.scalar(self.sig, Polynomial.constant(other, self.sig.n))
        else:
            return None
        if field.sig != self.sig:
            raise SignatureMismatch(f"cannot combine Cl({self.sig}) with Cl({field.sig})")
        return field

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)) and other == 0:
            return not self._comps
        if not isinstance(other, MultivectorField):
            return NotImplemented
        return self.sig == other.sig and self._comps == other._comps

    def __hash__(self) -> int:
        return hash((self.sig, frozenset(self._comps.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._comps)
        for m, p in other._comps.items():
            out[m] = out[m] + p if m in out else p
        return MultivectorField(self.sig, out)

    __radd__ = __add__

    def __neg__(self) -> "MultivectorField":
        return MultivectorField(self.sig, {m: -p for m, p in self._comps.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return MultivectorField(self.sig, {m: p * other for m, p in self._comps.items()})
        if isinstance(other, Polynomial):
            return MultivectorField(self.sig, {m: p * other for m, p in self._comps.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultivectorField(self.sig, multiply_terms(self.sig, self._comps, other._comps))

    def __rmul__(self, other):
        if isinstance(other, ((int, Rational, Polynomial))) and not isinstance(other, bool):
            return self * other
        if isinstance(other, Multivector):
            return MultivectorField.lift(other) * self
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def grade(self, k: int) -> "MultivectorField":
        if not 0 <= k <= self.sig.n:
            raise GradeError(f"grade {k} out of range 0..{self.sig.n}")
        return MultivectorField(self.sig, {m: p for m, p in self._comps.items() if grade_of(m) == k})

    def even(self) -> "MultivectorField":
        return MultivectorField(self.sig, {m: p for m, p in self._comps.items() if not grade_of(m) & 1})

    def odd(self) -> "MultivectorField":
        return MultivectorField(self.sig, {m: p for m, p in self._comps.items() if grade_of(m) & 1})

    def partial(self, i: int) -> "MultivectorField":
        return MultivectorField(self.sig, {m: p.partial(i) for m, p in self._comps.items()})

    def evaluate(self, point: Sequence) -> Multivector:
        return Multivector(self.sig, {m: p.evaluate(point) for m, p in self._comps.items()})

    def __repr__(self) -> str:
        base = self.sig.base
        body = "; ".join(f"{self.sig.blade_label(m)}: {p.format(base)}" for m, p in self)
        return f"MultivectorField({self.sig}, {{{body}}})"


def coordinate(sig: Signature, label: int) -> Polynomial:
    """The coordinate polynomial ``x_label`` (labels follow ``sig.base``)."""
    return Polynomial.variable(sig.index(label), sig.n)


def position_vector(sig: Signature) -> MultivectorField:
    n = sig.n
    return MultivectorField(sig, {1 << i: Polynomial.variable(i, n) for i in range(n)})


def require_grade(F: MultivectorField, k: int, what: str = "field") -> None:
    if not F.is_pure(k):
        raise GradeError(f"{what} must be pure grade {k}, has grades {F.grades()}")


def vector_derivative(F: MultivectorField) -> MultivectorField:
    """``dF = sum_i sigma_i e_i (dF/dx_i)``, exact."""
    sig = F.sig
    out = MultivectorField.zero(sig)
    for i, s in enumerate(sig.signs):
        d = F.partial(i)
        if d:
            out = out + MultivectorField.lift(Multivector(sig, {1 << i: s})) * d
    return out


def derivative_split(F: MultivectorField) -> tuple[MultivectorField, MultivectorField]:
    """Grade-lowering and grade-raising parts ``(d.F, d^F)``."""
    sig = F.sig
    div = MultivectorField.zero(sig)
    curl = MultivectorField.zero(sig)
    for k in F.grades():
        dk = vector_derivative(F.grade(k))
        if k > 0:
            div = div + dk.grade(k - 1)
        if k < sig.n:
            curl = curl + dk.grade(k + 1)
    return div, curl


def dot_derivative(F: MultivectorField) -> MultivectorField:
    return derivative_split(F)[0]


def wedge_derivative(F: MultivectorField) -> MultivectorField:
    return derivative_split(F)[1]


def dalembertian(F: MultivectorField) -> MultivectorField:
    return vector_derivative(vector_derivative(F))


def wave_operator_componentwise(F: MultivectorField) -> MultivectorField:
    """``sum_i sigma_i d^2/dx_i^2`` applied to each coefficient polynomial."""
    out = {}
    for m, p in F.comps.items():
        acc = Polynomial(F.sig.n)
        for i, s in enumerate(F.sig.signs):
            acc = acc + p.partial(i).partial(i) * s
        out[m] = acc
    return MultivectorField(F.sig, out)


class NumericEvaluationError(ArithmeticError):
    """A numeric field produced a non-finite value."""


@dataclass(frozen=True)
class NumericField:
    sig: Signature
    eval: Callable[[tuple[float, ...]], Multivector]

    def __call__(self, point: Sequence[float]) -> Multivector:
        return self.eval(tuple(float(x) for x in point))


def as_numeric(F: MultivectorField) -> NumericField:
    """Wrap an exact field for pointwise float evaluation."""

    def evaluate(point):
        return F.evaluate(tuple(float(x) for x in point))

    return NumericField(F.sig, evaluate)


def _finite(value: Multivector, point, label: str) -> Multivector:
    for c in value.terms.values():
        if not math.isfinite(float(c)):
            raise NumericEvaluationError(
                f"non-finite field value at {tuple(point)} while differencing along {label}"
            )
    return value


def numeric_vector_derivative(phi: NumericField, point: Sequence[float], h: float) -> Multivector:
    """Second-order central-difference estimate of the vector derivative."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    sig = phi.sig
    point = [float(x) for x in point]
    out = Multivector(sig)
    for i, s in enumerate(sig.signs):
        up = list(point)
        down = list(point)
        up[i] += h
        down[i] -= h
        label = f"x{i + sig.base}"
        diff = _finite(phi(up), up, label) - _finite(phi(down), down, label)
        out = out + Multivector(sig, {1 << i: s * 0.5 / h}) * diff
    return out


def observed_order(steps: Sequence[float], errors: Sequence[float]) -> float:
    """Slope of ``log(error)`` against ``log(step)`` by least squares."""
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if np.any(errors <= 0):
        raise ValueError("errors must be positive to fit a convergence order")
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)
