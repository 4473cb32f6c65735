"""Brute-force references, kept independent of the production algebra.

Nothing here calls :func:`ccrkit.algebra.blade_product` or the field
derivative code; results are only packed into the production types at the
end so callers can feed them to the checks under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .algebra import Signature
from .fields import MultivectorField
from .poly import Polynomial


def naive_blade_product(a: Sequence[int], b: Sequence[int], signs: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Multiply generator words by adjacent swaps and contractions.

    ``a`` and ``b`` are sequences of 0-based generator indices (any order,
    repeats allowed).  Returns ``(sign, canonical ascending tuple)``.
    """
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            if word[i] == word[i + 1]:
                sign *= signs[word[i]]
                del word[i : i + 2]
                changed = True
            elif word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
                i += 1
            else:
                i += 1
    return sign, tuple(word)


def all_blades(n: int) -> list[tuple[int, ...]]:
    return [c for k in range(n + 1) for c in combinations(range(n), k)]


def monomials(n: int, max_degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact basis of ``{v : A v = 0}`` by Gauss-Jordan elimination."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(A)) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -A[row][fc]
        basis.append(v)
    return basis


def dirac_system(signs: Sequence[int], max_degree: int, grades=None):
    """Matrix of the coefficient map ``F -> dF``.

    Unknowns are (blade, monomial) pairs for blades of the allowed grades
    and monomials of degree <= ``max_degree``.
    """
    n = len(signs)
    blades = [b for b in all_blades(n) if grades is None or len(b) in grades]
    monos = monomials(n, max_degree)
    unknowns = [(b, m) for b in blades for m in monos]
    equations: dict[tuple, dict[int, Fraction]] = {}
    for col, (blade, mono) in enumerate(unknowns):
        for i in range(n):
            if not mono[i]:
                continue
            s, out_blade = naive_blade_product((i,), blade, signs)
            d = list(mono)
            d[i] -= 1
            key = (out_blade, tuple(d))
            row = equations.setdefault(key, {})
            row[col] = row.get(col, 0) + Fraction(s * signs[i] * mono[i])
    keys = sorted(equations)
    rows = []
    for key in keys:
        dense = [Fraction(0)] * len(unknowns)
        for col, v in equations[key].items():
            dense[col] = v
        rows.append(dense)
    return rows, unknowns


def monogenic_basis(sig: Signature, max_degree: int, grades=None) -> list[MultivectorField]:
    """Basis of the monogenic fields with polynomial degree <= ``max_degree``.

    ``grades`` optionally restricts the ansatz to blades of those grades.
    """
    rows, unknowns = dirac_system(sig.signs, max_degree, grades)
    basis = nullspace(rows, len(unknowns)) if rows else [
        [Fraction(int(i == j)) for i in range(len(unknowns))] for j in range(len(unknowns))
    ]
    n = sig.n
    out = []
    for vec in basis:
        comps: dict[int, dict] = {}
        for (blade, mono), v in zip(unknowns, vec):
            if v:
                mask = sum(1 << i for i in blade)
                comps.setdefault(mask, {})[mono] = v
        out.append(MultivectorField(sig, {m: Polynomial(n, t) for m, t in comps.items()}))
    return out
