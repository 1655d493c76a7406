"""Exact linear algebra over Q[u, u^-1] and over Q.

Matrices are lists of rows.  Laurent entries are eliminated fraction-free
(Bareiss), so every intermediate value stays in the Laurent ring and every
division is exact.  Ranks over the fraction field Q(u) are ranks of these
matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .coeff import LaurentCoeff

Matrix = list[list[LaurentCoeff]]

ZERO = LaurentCoeff.zero()
ONE = LaurentCoeff.one()


def _copy(M) -> list[list]:
    return [list(row) for row in M]


def _echelon(A: list[list], zero, one, divide, jordan: bool):
    """In-place fraction-free elimination; returns the pivot columns.

    With ``jordan`` set, rows above each pivot are cleared as well and every
    pivot ends up equal to the last one (the determinant of the pivot minor).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    prev = one
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prc = A[r][c]
        rows = range(m) if jordan else range(r + 1, m)
        for i in rows:
            if i == r:
                continue
            aic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(n):
                if j == c:
                    continue
                x = prc * row_i[j] - aic * row_r[j]
                row_i[j] = divide(x, prev) if x else zero
            row_i[c] = zero
        prev = prc
        pivots.append(c)
        r += 1
    return pivots


def _laurent_div(x: LaurentCoeff, d: LaurentCoeff) -> LaurentCoeff:
    return x.exact_div(d)


def _fraction_div(x: Fraction, d: Fraction) -> Fraction:
    return x / d


def bareiss_rank(M: Sequence[Sequence[LaurentCoeff]]) -> int:
    """Rank over Q(u) of a Laurent matrix."""
    A = _copy(M)
    return len(_echelon(A, ZERO, ONE, _laurent_div, jordan=False))


def rank_fraction(M: Sequence[Sequence[Fraction]]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    return len(_echelon(A, Fraction(0), Fraction(1), _fraction_div, jordan=False))


def specialise(M: Sequence[Sequence[LaurentCoeff]], u) -> list[list[Fraction]]:
    return [[x.evaluate(u) for x in row] for row in M]


def kernel(M: Sequence[Sequence[LaurentCoeff]], ncols: int | None = None) -> list[list[LaurentCoeff]]:
    """Basis of the right kernel over Q(u), with entries in the Laurent ring.

    Uses fraction-free Gauss-Jordan: after elimination every pivot equals d,
    and the kernel vector of a free column f has d in slot f and minus the
    reduced column entries in the pivot slots.
    """
    A = _copy(M)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        A = []
    pivots = _echelon(A, ZERO, ONE, _laurent_div, jordan=True) if A else []
    d = A[len(pivots) - 1][pivots[-1]] if pivots else ONE
    out = []
    for f in range(n):
        if f in pivots:
            continue
        x = [ZERO] * n
        x[f] = d
        for i, c in enumerate(pivots):
            x[c] = -A[i][f]
        out.append(_primitive(x))
    return out


def _primitive(x: list[LaurentCoeff]) -> list[LaurentCoeff]:
    # strip a common power of u and make the leading entry monic-ish, for readability only
    nz = [e for e in x if e]
    if not nz:
        return x
    shift = min(e.min_exp() for e in nz)
    lead = next(e for e in nz)
    scale = lead.coefficient(lead.max_exp())
    return [e.shift(-shift) * LaurentCoeff.const(1 / scale) if e else e for e in x]


def mat_vec(M: Sequence[Sequence[LaurentCoeff]], x: Sequence[LaurentCoeff]) -> list[LaurentCoeff]:
    out = []
    for row in M:
        s = ZERO
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def generic_rank(M: Sequence[Sequence[LaurentCoeff]], points=(2, 3, Fraction(5, 7))) -> int:
    """Rank over Q(u).

    A specialisation can only lower the rank, so full rank at any point is a
    certificate; otherwise the exact fraction-free computation decides.
    """
    if not M:
        return 0
    n = len(M[0])
    full = min(len(M), n)
    for u in points:
        if rank_fraction(specialise(M, u)) == full:
            return full
    return bareiss_rank(M)


__all__ = ["bareiss_rank", "rank_fraction", "kernel", "generic_rank", "mat_vec", "specialise"]
