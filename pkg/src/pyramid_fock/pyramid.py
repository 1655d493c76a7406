"""Pyramids: unimodal unit-jump step functions, and their partition dictionary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterator, Sequence

from .stepfun import (
    LineInterval,
    StepFunction,
    format_rational,
    rational,
    sym_form_line,
)


class PyramidError(ValueError):
    """Base class; ``axiom`` names the violated condition."""

    axiom = "pyramid"


class NotNonneg(PyramidError):
    axiom = "nonneg"


class MaxNotAtZero(PyramidError):
    axiom = "max-at-zero"


class NotUnimodal(PyramidError):
    axiom = "unimodal"


class JumpTooLarge(PyramidError):
    axiom = "unit-jumps"


class NotIntegral(PyramidError):
    axiom = "integral"


class NotMonotone(ValueError):
    pass


class ZeroNotFixed(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


def check_axioms(f: StepFunction) -> None:
    """Raise the error for the first violated pyramid axiom, in axiom order."""
    if f.min_value() < 0:
        x = next(a for a, _, v in f.plateaus() if v < 0)
        raise NotNonneg(f"value below zero on a plateau starting at {format_rational(x)}")
    if f(0) != f.max_value():
        raise MaxNotAtZero(f"p(0) = {f(0)} but max is {f.max_value()}")
    jumps = f.jumps()
    for x, j in jumps.items():
        if (x <= 0 and j < 0) or (x > 0 and j > 0):
            raise NotUnimodal(f"jump {j:+d} at {format_rational(x)} breaks unimodality")
    for x, j in jumps.items():
        if abs(j) > 1:
            raise JumpTooLarge(f"jump of {abs(j)} at {format_rational(x)}")


def _is_pyramid(f: StepFunction) -> bool:
    # fast path of check_axioms without building messages
    if f.min_value() < 0 or f(0) != f.max_value():
        return False
    for x, j in f.jumps().items():
        if abs(j) > 1 or (x <= 0 and j < 0) or (x > 0 and j > 0):
            return False
    return True


@total_ordering
@dataclass(frozen=True)
class Pyramid:
    """A validated pyramid; construct through :func:`validate` or the helpers."""

    f: StepFunction

    def __post_init__(self):
        check_axioms(self.f)

    # thin delegation to the step function
    def __call__(self, x) -> int:
        return self.f(x)

    def left_limit(self, x) -> int:
        return self.f.left_limit(x)

    @property
    def breakpoints(self):
        return self.f.breakpoints

    @property
    def values(self):
        return self.f.values

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def height(self) -> int:
        return self.f.max_value()

    def discontinuities(self) -> tuple:
        return self.f.breakpoints

    def size(self) -> Fraction:
        return self.f.integral()

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.f.breakpoints)

    def on_grid(self, N: int) -> bool:
        return all((x * N).denominator == 1 for x in self.f.breakpoints)

    def sort_key(self):
        return self.f.sort_key()

    def __lt__(self, other: "Pyramid") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.f.to_text()

    def __repr__(self) -> str:
        return f"Pyramid({self.f.to_text()!r})"

    def to_text(self) -> str:
        return self.f.to_text()

    @classmethod
    def from_text(cls, text: str) -> "Pyramid":
        return cls(StepFunction.from_text(text))

    def to_json(self) -> dict:
        return self.f.to_json()

    @classmethod
    def from_json(cls, data) -> "Pyramid":
        return cls(StepFunction.from_json(data))

    @classmethod
    def zero(cls) -> "Pyramid":
        return EMPTY


EMPTY = Pyramid(StepFunction())


def validate(f: StepFunction) -> Pyramid:
    return Pyramid(f)


def discontinuities(p: Pyramid) -> tuple:
    return p.discontinuities()


def size(p: Pyramid) -> Fraction:
    return p.size()


# ---------------------------------------------------------------------------
# addable / removable


def _shift(p: Pyramid, J: LineInterval, c: int) -> StepFunction:
    jumps = p.f.jumps()
    jumps[J.a] = jumps.get(J.a, 0) + c
    jumps[J.b] = jumps.get(J.b, 0) - c
    return StepFunction.from_jumps(jumps)


def add_interval(p: Pyramid, J: LineInterval) -> Pyramid | None:
    g = _shift(p, J, 1)
    return Pyramid(g) if _is_pyramid(g) else None


def remove_interval(p: Pyramid, J: LineInterval) -> Pyramid | None:
    g = _shift(p, J, -1)
    return Pyramid(g) if _is_pyramid(g) else None


def is_addable(p: Pyramid, J: LineInterval) -> bool:
    return _is_pyramid(_shift(p, J, 1))


def is_removable(p: Pyramid, J: LineInterval) -> bool:
    return _is_pyramid(_shift(p, J, -1))


def n_interval(p: Pyramid, J: LineInterval) -> int:
    """+1 addable, -1 removable, 0 otherwise (decided by axiom validation)."""
    if is_addable(p, J):
        return 1
    if is_removable(p, J):
        return -1
    return 0


def n_via_lemma(p: Pyramid, J: LineInterval) -> int:
    return int(J.contains_zero()) - sym_form_line(J.indicator(), p.f)


def n_fast(p: Pyramid, a: Fraction, b: Fraction) -> int:
    """``n_[a,b)(p)`` from one-sided values only; used in hot loops."""
    f = p.f
    pair = (f.left_limit(b) - f(b)) - (f.left_limit(a) - f(a))
    return int(a <= 0 < b) - pair


# ---------------------------------------------------------------------------
# heights


def heights(p: Pyramid, J: LineInterval) -> tuple[int, int, int]:
    """``(ht, ht-, ht+)``: value spreads of p over J, J ∩ (x<0), J ∩ (x>=0)."""

    def spread(lo, hi):
        if lo >= hi:
            return 0
        vals = [p(lo)] + [p(x) for x in p.breakpoints if lo < x < hi]
        return max(vals) - min(vals)

    neg = spread(J.a, min(J.b, Fraction(0)))
    pos = spread(max(J.a, Fraction(0)), J.b)
    return spread(J.a, J.b), neg, pos


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError("partition parts must be positive")
        if any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def boxes(self) -> Iterator[tuple[int, int]]:
        """(row, col), 0-based."""
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j

    def to_text(self) -> str:
        return ",".join(map(str, self.parts))

    __str__ = to_text

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        s = text.strip()
        if s in ("", "0", "()", "∅"):
            return cls(())
        return cls(tuple(int(t) for t in s.split(",")))


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield Partition((k,) + rest.parts)


def partition_to_pyramid(lam: Partition) -> Pyramid:
    counts: dict[int, int] = {}
    for i, j in lam.boxes():
        counts[j - i] = counts.get(j - i, 0) + 1
    if not counts:
        return EMPTY
    lo, hi = min(counts), max(counts)
    pts = tuple(range(lo, hi + 2))
    vals = tuple(counts.get(c, 0) for c in range(lo, hi + 1))
    return Pyramid(StepFunction(pts, vals))


def pyramid_to_partition(p: Pyramid) -> Partition:
    if not p.is_integral():
        bad = next(x for x in p.breakpoints if x.denominator != 1)
        raise NotIntegral(f"breakpoint {format_rational(bad)} is not an integer")
    if p.is_zero():
        return Partition(())
    lo, hi = int(p.breakpoints[0]), int(p.breakpoints[-1])
    rows = []
    i = 0
    while True:
        # box (i, j) sits on content j - i, and the run on each content starts at the corner
        row = sum(1 for j in range(0, hi + i + 1) if p(j - i) > min(i, j))
        if row == 0:
            break
        rows.append(row)
        i += 1
        if i > hi - lo + 1 + p.height():
            break
    lam = Partition(tuple(rows))
    if partition_to_pyramid(lam) != p:  # pragma: no cover - guarded by the axioms
        raise NotIntegral("integral step function does not come from a partition")
    return lam


def integral_pyramids(n: int) -> list[Pyramid]:
    """All Z-pyramids of size n, enumerated from their height profiles."""
    return grid_pyramids(1, Fraction(n))


def _descents(h: int, budget: int) -> Iterator[tuple[int, ...]]:
    # non-increasing sequences starting below h with unit steps, ending at 0
    # yields the values on successive cells after the starting cell
    if h == 0:
        yield ()
        return
    for nxt in (h, h - 1):
        if nxt == 0:
            yield ()
            continue
        if nxt > budget:
            continue
        for rest in _descents(nxt, budget - nxt):
            yield (nxt,) + rest


def grid_pyramids(N: int, total: Fraction) -> list[Pyramid]:
    """All (1/N)Z-pyramids of size ``total`` (cells of width 1/N)."""
    cells = total * N
    if cells.denominator != 1:
        return []
    cells = int(cells)
    out = []
    if cells == 0:
        return [EMPTY]
    w = Fraction(1, N)
    for h in range(1, cells + 1):
        for right in _descents(h, cells - h):
            used = h + sum(right)
            for left in _descents(h, cells - used):
                if used + sum(left) != cells:
                    continue
                # profile: left reversed, centre cell [0, w), right
                seq = list(reversed(left)) + [h] + list(right)
                start = -len(left)
                pts = tuple(Fraction(start + k, N) for k in range(len(seq) + 1))
                out.append(Pyramid(StepFunction(pts, tuple(seq))))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# classical notions extended to pyramids


def transpose(p: Pyramid) -> Pyramid:
    """Cell reflection ``[n, n+1) <-> [-n, -n+1)``, i.e. breakpoints ``x -> 1 - x``.

    On integral pyramids this is Young-diagram transposition.  On other
    pyramids the reflected function may fail the max-at-zero axiom, in which
    case the pyramid error propagates.
    """
    if p.is_zero():
        return p
    pts = tuple(1 - x for x in reversed(p.breakpoints))
    vals = tuple(reversed(p.values))
    return Pyramid(StepFunction(pts, vals))


def length(p: Pyramid) -> int:
    """Number of integers n >= 0 with p(-n) != 0 (number of rows for partitions)."""
    if p.is_zero():
        return 0
    lo = p.breakpoints[0]
    return sum(1 for n in range(0, math.ceil(-lo) + 1) if p(-n) != 0)


def _phi(p: Pyramid, n: Fraction) -> Fraction:
    """``∫ min(p, κ_n)`` for n >= 0, κ_n the ramp 0 | n + x | n."""
    total = Fraction(0)
    for a, b, h in p.f.plateaus():
        total += _ramp_integral(a, b, h, n)
    return total


def _ramp_integral(a: Fraction, b: Fraction, h: int, n: Fraction) -> Fraction:
    # integrand min(h, κ_n(x)) on [a, b); κ_n is 0 below -n, n + x on [-n, 0], n above
    cuts = sorted({a, b} | {c for c in (-n, h - n, Fraction(0)) if a < c < b})
    out = Fraction(0)
    for lo, hi in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        if mid >= 0:
            k_lo = k_hi = n
        elif mid <= -n:
            k_lo = k_hi = Fraction(0)
        else:
            k_lo, k_hi = n + lo, n + hi
        if (k_lo + k_hi) / 2 >= h:
            out += h * (hi - lo)
        else:
            out += (k_lo + k_hi) / 2 * (hi - lo)
    return out


def phi(p: Pyramid, n) -> Fraction:
    n = rational(n)
    if n <= 0:
        return Fraction(0)
    return _phi(p, n)


def dominance_leq(q: Pyramid, p: Pyramid) -> bool:
    """``q <= p``: Φ_p(n) >= Φ_q(n) for every rational n >= 0.

    Φ is piecewise quadratic in n with breaks among the candidate points
    ``h - x``, ``-x`` and ``h`` (h a plateau value, x a breakpoint).  On each
    piece the difference is interpolated from three samples and its minimum
    is checked at the ends and at the vertex.
    """
    if q.size() != p.size():
        raise SizeMismatch(f"sizes differ: {q.size()} vs {p.size()}")
    hs = set(p.values) | set(q.values)
    xs = set(p.breakpoints) | set(q.breakpoints)
    cand = {Fraction(0)} | {Fraction(h) for h in hs} | {-x for x in xs} | {h - x for h in hs for x in xs}
    knots = sorted(c for c in cand if c >= 0)
    top = knots[-1] + 1
    knots.append(top)

    def d(n):
        return phi(p, n) - phi(q, n)

    for lo, hi in zip(knots, knots[1:]):
        mid = (lo + hi) / 2
        y0, y1, y2 = d(lo), d(mid), d(hi)
        if min(y0, y1, y2) < 0:
            return False
        # quadratic through the three points in t = (n - lo)/(hi - lo) in [0,1]
        A = 2 * y0 - 4 * y1 + 2 * y2
        B = -3 * y0 + 4 * y1 - y2
        if A > 0:
            t = -B / (2 * A)
            if 0 < t < 1 and A * t * t + B * t + y0 < 0:
                return False
    return True


def classical_dominance_leq(mu: Partition, lam: Partition) -> bool:
    """Partial sums of mu never exceed those of lam."""
    if mu.size() != lam.size():
        raise SizeMismatch("sizes differ")
    s = t = 0
    for k in range(max(len(mu), len(lam))):
        s += mu.parts[k] if k < len(mu) else 0
        t += lam.parts[k] if k < len(lam) else 0
        if s > t:
            return False
    return True


def nested_decomposition(p: Pyramid) -> list[LineInterval]:
    """Level sets ``{p >= h}``, outermost first."""
    out = []
    for h in range(1, p.height() + 1):
        xs = [a for a, b, v in p.f.plateaus() if v >= h]
        ys = [b for a, b, v in p.f.plateaus() if v >= h]
        out.append(LineInterval(min(xs), max(ys)))
    return out


def from_intervals(intervals: Sequence[LineInterval]) -> Pyramid:
    return Pyramid(StepFunction.from_intervals((J, 1) for J in intervals))


def regrid(p: Pyramid, table: Sequence[tuple]) -> Pyramid:
    """Move breakpoints along a strictly increasing map given by sample pairs.

    ``table`` lists ``(x, alpha(x))``; between samples the map is linear,
    outside them it is extended with the slope of the nearest segment.
    """
    pairs = sorted((rational(x), rational(y)) for x, y in table)
    if len(pairs) < 2:
        raise NotMonotone("need at least two sample points")
    for (x0, y0), (x1, y1) in zip(pairs, pairs[1:]):
        if not (x0 < x1 and y0 < y1):
            raise NotMonotone(f"map not strictly increasing between {x0} and {x1}")
    if _interp(pairs, Fraction(0)) != 0:
        raise ZeroNotFixed("the map must send 0 to 0")
    pts = tuple(_interp(pairs, x) for x in p.breakpoints)
    return Pyramid(StepFunction(pts, p.values))


def _interp(pairs, x: Fraction) -> Fraction:
    if x <= pairs[0][0]:
        (x0, y0), (x1, y1) = pairs[0], pairs[1]
    elif x >= pairs[-1][0]:
        (x0, y0), (x1, y1) = pairs[-2], pairs[-1]
    else:
        for (x0, y0), (x1, y1) in zip(pairs, pairs[1:]):
            if x0 <= x <= x1:
                break
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def scale(p: Pyramid, c) -> Pyramid:
    """Regrid by ``x -> c x`` (c > 0)."""
    c = rational(c)
    if c <= 0:
        raise NotMonotone("scale factor must be positive")
    return Pyramid(StepFunction(tuple(c * x for x in p.breakpoints), p.values))
