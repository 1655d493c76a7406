"""Hayashi's Fock space on partitions: the sl(infinity) action and its folding to affine sl(n).

Used as an independent oracle.  Everything here works on Young diagrams
directly and never goes through step functions, except for the explicit
bridge helpers at the bottom.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .coeff import LaurentCoeff, neg_v_power, quantum_integer, signed_v_power
from .fock_line import FockVector
from .pyramid import Partition, partition_to_pyramid, partitions

ONE = LaurentCoeff.one()


class PartitionVector(FockVector):
    """Finite combination of partitions; same arithmetic and JSON shape as FockVector."""

    __slots__ = ()

    @staticmethod
    def _key(lam):
        # larger partitions first inside a size, sizes ascending
        return (lam.size(), tuple(-x for x in lam.parts))

    @classmethod
    def vacuum(cls) -> "PartitionVector":
        return cls({Partition(()): ONE})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c}) |{lam.to_text() or '0'}>" for lam, c in self._terms.items())

    __repr__ = __str__

    def to_json(self) -> list:
        return [{"partition": lam.to_text(), "coeff": c.to_json()} for lam, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "PartitionVector":
        out: dict = {}
        for item in data:
            lam = Partition.from_text(item["partition"])
            out[lam] = out.get(lam, LaurentCoeff.zero()) + LaurentCoeff.from_json(item["coeff"])
        return cls(out)


# -- Young diagram scans ---------------------------------------------------------


@lru_cache(maxsize=None)
def _corners(lam: Partition) -> tuple[dict, dict]:
    """color -> partition after adding / removing the box of that color."""
    parts = list(lam.parts)
    add, rem = {}, {}
    for i in range(len(parts) + 1):
        row = parts[i] if i < len(parts) else 0
        above = parts[i - 1] if i > 0 else None
        if above is None or above > row:
            new = parts[:i] + [row + 1] + parts[i + 1 :]
            add[row - i] = Partition(tuple(new))
        if i < len(parts):
            below = parts[i + 1] if i + 1 < len(parts) else 0
            if below < row:
                new = parts[:i] + [row - 1] + parts[i + 1 :]
                rem[row - 1 - i] = Partition(tuple(x for x in new if x))
    return add, rem


def box_colors(lam: Partition) -> tuple[list[int], list[int]]:
    """Sorted colors (col - row) of the addable and removable boxes."""
    add, rem = _corners(lam)
    return sorted(add), sorted(rem)


def n_i(lam: Partition, i: int) -> int:
    """#addable minus #removable boxes of color i."""
    add, rem = _corners(lam)
    return (i in add) - (i in rem)


def color_range(lam: Partition) -> range:
    # no corner can sit outside [-len(lam), lam_1]
    top = lam.parts[0] if lam.parts else 0
    return range(-len(lam), top + 1)


def _n_sum(lam: Partition, j: int, n: int, side: int) -> int:
    """sum of n_k(lam) over k = j (mod n) strictly below (side<0) or above (side>0) j."""
    add, rem = _corners(lam)
    total = 0
    for k in set(add) | set(rem):
        if (k - j) % n == 0 and (k - j) * side > 0:
            total += (k in add) - (k in rem)
    return total


def n_minus(lam: Partition, j: int, n: int) -> int:
    return _n_sum(lam, j, n, -1)


def n_plus(lam: Partition, j: int, n: int) -> int:
    return _n_sum(lam, j, n, +1)


def n_bar_affine(lam: Partition, i: int, n: int) -> int:
    add, rem = _corners(lam)
    return sum((k in add) - (k in rem) for k in set(add) | set(rem) if (k - i) % n == 0)


# -- actions -------------------------------------------------------------------


def _linear(fn: Callable) -> Callable:
    def apply(*args):
        *head, w = args
        out: dict = {}
        for lam, c in w.items():
            for mu, d in fn(*head, lam):
                x = c * d
                out[mu] = out[mu] + x if mu in out else x
        return PartitionVector(out)

    apply.__name__ = fn.__name__
    return apply


def _E_inf(i: int, lam: Partition):
    rem = _corners(lam)[1]
    return [(rem[i], ONE)] if i in rem else []


def _F_inf(i: int, lam: Partition):
    add = _corners(lam)[0]
    return [(add[i], ONE)] if i in add else []


def _K_inf(i: int, lam: Partition):
    return [(lam, LaurentCoeff.v_power(n_i(lam, i)))]


sl_inf_E = _linear(_E_inf)
sl_inf_F = _linear(_F_inf)
sl_inf_K = _linear(_K_inf)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("affine sl(n) needs n >= 2")


def _E_aff(i: int, n: int, lam: Partition):
    _check_n(n)
    rem = _corners(lam)[1]
    return [(rem[j], LaurentCoeff.v_power(-n_minus(lam, j, n))) for j in sorted(rem) if (j - i) % n == 0]


def _F_aff(i: int, n: int, lam: Partition):
    _check_n(n)
    add = _corners(lam)[0]
    return [(add[j], LaurentCoeff.v_power(n_plus(lam, j, n))) for j in sorted(add) if (j - i) % n == 0]


def _K_aff(i: int, n: int, lam: Partition):
    _check_n(n)
    return [(lam, LaurentCoeff.v_power(n_bar_affine(lam, i, n)))]


affine_E = _linear(_E_aff)
affine_F = _linear(_F_aff)
affine_K = _linear(_K_aff)


def affine_K_inv(i: int, n: int, w: PartitionVector) -> PartitionVector:
    return PartitionVector({lam: c * LaurentCoeff.v_power(-n_bar_affine(lam, i, n)) for lam, c in w.items()})


# -- Cartan data and relation checks ---------------------------------------------


def cartan_affine(n: int, i: int, j: int) -> int:
    """Affine type A Cartan matrix; for n = 2 the off-diagonal entries are -2."""
    _check_n(n)
    i, j = i % n, j % n
    if i == j:
        return 2
    return -sum(1 for d in (1, -1) if (i + d) % n == j)


def cartan_inf(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def quantum_binomial(m: int, k: int) -> LaurentCoeff:
    """Symmetric quantum binomial computed by the q-Pascal rule (no division)."""
    return _qbin(m, k)


@lru_cache(maxsize=None)
def _qbin(m: int, k: int) -> LaurentCoeff:
    if k < 0 or k > m:
        return LaurentCoeff.zero()
    if k == 0 or k == m:
        return ONE
    # [m, k] = v^{-k} [m-1, k] + v^{m-k} [m-1, k-1]
    return LaurentCoeff.v_power(-k) * _qbin(m - 1, k) + LaurentCoeff.v_power(m - k) * _qbin(m - 1, k - 1)


def _power(op, k: int, w):
    for _ in range(k):
        w = op(w)
        if not w:
            break
    return w


def serre_defect(Ei, Ej, a_ij: int, w):
    """``sum_k (-1)^k [1-a, k] Ei^k Ej Ei^{1-a-k} w``; zero when the Serre relation holds."""
    m = 1 - a_ij
    out = type(w)()
    for k in range(m + 1):
        term = _power(Ei, k, Ej(_power(Ei, m - k, w)))
        if term:
            sign = 1 if k % 2 == 0 else -1
            out = out + term.scale(quantum_binomial(m, k) * sign)
    return out


def ef_defect(E, F, kexp: int, w):
    """``[E, F] w - [kexp] w`` for a basis vector w of K-weight v^kexp."""
    return E(F(w)) - F(E(w)) - w.scale(quantum_integer(kexp))


def check_affine_relations(n: int, lam: Partition) -> list[str]:
    """All affine relations evaluated on |lam>; returns the names of those that fail."""
    w = PartitionVector.basis(lam)
    bad = []
    for i in range(n):
        Ei = lambda x, i=i: affine_E(i, n, x)
        Fi = lambda x, i=i: affine_F(i, n, x)
        for j in range(n):
            Ej = lambda x, j=j: affine_E(j, n, x)
            Fj = lambda x, j=j: affine_F(j, n, x)
            a = cartan_affine(n, i, j)
            # K_i X_j K_i^{-1} on |lam>: compare with weight shift
            lhs = affine_K(i, n, Ej(affine_K_inv(i, n, w)))
            if lhs != Ej(w).scale(LaurentCoeff.v_power(a)):
                bad.append(f"KEK({i},{j})")
            lhs = affine_K(i, n, Fj(affine_K_inv(i, n, w)))
            if lhs != Fj(w).scale(LaurentCoeff.v_power(-a)):
                bad.append(f"KFK({i},{j})")
            if i == j:
                if ef_defect(Ei, Fi, n_bar_affine(lam, i, n), w):
                    bad.append(f"EF({i})")
            else:
                if Ei(Fj(w)) != Fj(Ei(w)):
                    bad.append(f"EF({i},{j})")
                if serre_defect(Ei, Ej, a, w):
                    bad.append(f"serreE({i},{j})")
                if serre_defect(Fi, Fj, a, w):
                    bad.append(f"serreF({i},{j})")
    return bad


def check_sl_inf_relations(lam: Partition) -> list[str]:
    w = PartitionVector.basis(lam)
    colors = list(color_range(lam))
    colors = list(range(colors[0] - 1, colors[-1] + 2))
    bad = []
    for i in colors:
        Ei = lambda x, i=i: sl_inf_E(i, x)
        Fi = lambda x, i=i: sl_inf_F(i, x)
        for j in colors:
            Ej = lambda x, j=j: sl_inf_E(j, x)
            Fj = lambda x, j=j: sl_inf_F(j, x)
            a = cartan_inf(i, j)
            # weight of E_j|lam> shifts n_i by a_ij
            for mu in Ej(w).support():
                if n_i(mu, i) != n_i(lam, i) + a:
                    bad.append(f"KEK({i},{j})")
            for mu in Fj(w).support():
                if n_i(mu, i) != n_i(lam, i) - a:
                    bad.append(f"KFK({i},{j})")
            if i == j:
                if ef_defect(Ei, Fi, n_i(lam, i), w):
                    bad.append(f"EF({i})")
            else:
                if Ei(Fj(w)) != Fj(Ei(w)):
                    bad.append(f"EF({i},{j})")
                if serre_defect(Ei, Ej, a, w):
                    bad.append(f"serreE({i},{j})")
                if serre_defect(Fi, Fj, a, w):
                    bad.append(f"serreF({i},{j})")
    return bad


# -- bridge to pyramids -----------------------------------------------------------


def rescaling(lam: Partition) -> LaurentCoeff:
    """Diagonal factor d(lam) = v^{|lam|/2} (-v^-1)^{#boxes of negative color}.

    Conjugating the coefficient-one sl(infinity) action by d gives the
    interval action on integral pyramids:  X_line = d X_classical d^-1.
    """
    neg = sum(1 for r, c in lam.boxes() if c - r < 0)
    return signed_v_power(1, Fraction(lam.size(), 2)) * neg_v_power(-neg)


def hayashi_display_E(i: int, lam: Partition) -> list:
    """The integral-grid E action as a case split on the sign of the color."""
    rem = _corners(lam)[1]
    if i not in rem:
        return []
    c = signed_v_power(-1, Fraction(1, 2)) if i < 0 else signed_v_power(1, Fraction(-1, 2))
    return [(rem[i], c)]


def hayashi_display_F(i: int, lam: Partition) -> list:
    add = _corners(lam)[0]
    if i not in add:
        return []
    c = signed_v_power(-1, Fraction(-1, 2)) if i < 0 else signed_v_power(1, Fraction(1, 2))
    return [(add[i], c)]


def to_fock(w: PartitionVector) -> FockVector:
    return FockVector({partition_to_pyramid(lam): c for lam, c in w.items()})


def all_partitions(max_size: int) -> list[Partition]:
    return [lam for m in range(max_size + 1) for lam in partitions(m)]


__all__ = [
    "PartitionVector",
    "box_colors",
    "n_i",
    "n_minus",
    "n_plus",
    "sl_inf_E",
    "sl_inf_F",
    "sl_inf_K",
    "affine_E",
    "affine_F",
    "affine_K",
    "cartan_affine",
    "color_range",
    "quantum_binomial",
    "serre_defect",
    "check_affine_relations",
    "check_sl_inf_relations",
    "rescaling",
    "to_fock",
]
