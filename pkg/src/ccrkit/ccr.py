"""Grade-by-grade decomposition of the monogenic condition ``dF = 0``.

Writing ``F = f_0 + f_1 + ... + f_n`` by grade, ``dF`` splits into

* grade 0:      ``d.f_1``
* grade i:      ``d.f_{i+1} + d^f_{i-1}``  for ``0 < i < n``
* grade n:      ``d^f_{n-1}``

and ``F`` is monogenic exactly when every one of these vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import GradeError, pseudoscalar_inverse
from .fields import (
    MultivectorField,
    dalembertian,
    derivative_split,
    require_grade,
)


@dataclass(frozen=True)
class CcrReport:
    """Residual fields of the CCR system for one input field.

    ``chain[i - 1]`` is the grade-``i`` residual ``d.f_{i+1} + d^f_{i-1}``.
    """

    gauss_like: MultivectorField
    top: MultivectorField
    chain: tuple[MultivectorField, ...]
    monogenic: bool

    @property
    def n(self) -> int:
        return self.gauss_like.sig.n

    def by_grade(self) -> dict[int, MultivectorField]:
        out = {0: self.gauss_like}
        for i, r in enumerate(self.chain, start=1):
            out[i] = r
        out[self.n] = self.top
        return out

    def entries(self) -> list[tuple[str, int, MultivectorField]]:
        """``(name, grade, residual)`` in grade order."""
        n = self.n
        names = {0: "d.f1", n: f"d^f{n - 1}"}
        for i in range(1, n):
            names[i] = f"d.f{i + 1} + d^f{i - 1}"
        return [(names[k], k, r) for k, r in sorted(self.by_grade().items())]

    def total(self) -> MultivectorField:
        out = MultivectorField.zero(self.gauss_like.sig)
        for r in self.by_grade().values():
            out = out + r
        return out


def _parts(F: MultivectorField):
    n = F.sig.n
    dots = {}
    wedges = {}
    for k in range(n + 1):
        dots[k], wedges[k] = derivative_split(F.grade(k))
    return dots, wedges


def ccr_residuals(F: MultivectorField) -> CcrReport:
    n = F.sig.n
    dots, wedges = _parts(F)
    chain = tuple(dots[i + 1] + wedges[i - 1] for i in range(1, n))
    gauss_like = dots[1]
    top = wedges[n - 1]
    monogenic = gauss_like.is_zero() and top.is_zero() and all(r.is_zero() for r in chain)
    return CcrReport(gauss_like, top, chain, monogenic)


def is_monogenic(F: MultivectorField) -> bool:
    return ccr_residuals(F).monogenic


@dataclass(frozen=True)
class HarmonicCheck:
    harmonic: bool
    wave: MultivectorField

    @property
    def witness(self) -> dict[str, object]:
        """Blade label -> nonzero component of ``d^2 F``."""
        sig = self.wave.sig
        return {sig.blade_label(m): p for m, p in self.wave}


def harmonic_check(F: MultivectorField) -> HarmonicCheck:
    wave = dalembertian(F)
    return HarmonicCheck(wave.is_zero(), wave)


@dataclass(frozen=True)
class DualCcrCheck:
    """Primal residuals next to the same system written in ``G = F I^-1``.

    ``dual[i]`` is ``d^g_{n-i-1} + d.g_{n-i+1}`` (grade ``n - i``), where
    ``g_k`` is the grade-``k`` part of ``G``; right-multiplying it by ``I``
    gives the primal grade-``i`` residual.
    """

    primal: CcrReport
    dual: dict[int, MultivectorField] = field(default_factory=dict)
    consistent: bool = True

    @property
    def vanish_together(self) -> bool:
        return self.primal.monogenic == all(r.is_zero() for r in self.dual.values())


def dual_ccr_check(F: MultivectorField) -> DualCcrCheck:
    sig = F.sig
    n = sig.n
    I_inv = pseudoscalar_inverse(sig)
    I = sig.pseudoscalar()
    G = F * I_inv
    dots, wedges = _parts(G)
    zero = MultivectorField.zero(sig)
    dual = {}
    for i in range(n + 1):
        lower = wedges[n - i - 1] if n - i - 1 >= 0 else zero
        upper = dots[n - i + 1] if n - i + 1 <= n else zero
        dual[i] = lower + upper
    primal = ccr_residuals(F)
    by_grade = primal.by_grade()
    consistent = all(dual[i] * I == by_grade[i] for i in range(n + 1))
    return DualCcrCheck(primal, dual, consistent)


def midgrade_duality_residual(f: MultivectorField, g: MultivectorField) -> MultivectorField:
    """``d^f + (d^g) I^-1`` for fields of grade ``n/2 - 1`` (``n`` even).

    Zero means ``d^f = -(d^g) I^-1``: the middle CCR equation with the
    higher-grade partner written as ``f_{n/2+1} = g I^-1``.
    """
    sig = f.sig
    if g.sig != sig:
        raise ValueError("f and g belong to different algebras")
    if sig.n % 2:
        raise GradeError(f"mid-grade duality needs an even generator count, got n={sig.n}")
    k = sig.n // 2 - 1
    require_grade(f, k, "f")
    require_grade(g, k, "g")
    _, df = derivative_split(f)
    _, dg = derivative_split(g)
    return df + dg * pseudoscalar_inverse(sig)
