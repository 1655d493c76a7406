"""Action of the circle quantum group on the pyramid Fock space.

Two independent evaluations are provided:

* the closed tuple formula (``apply_E_circle`` / ``apply_F_circle``), which
  enumerates lifts of a subdivided circle interval and writes down the
  coefficient directly, and
* the folding expansion (``expand_r_E`` / ``expand_r_F``), which composes
  the line operators of :mod:`fock_line` with the diagonal K-factors.

The closed coefficient carries one factor of the line normalisation
``±v^{1/2}`` per lift; without it the two evaluations disagree and
``[E_J, F_J]`` fails already on the vacuum.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .coeff import LaurentCoeff, V_MINUS_VINV, neg_v_power, signed_v_power
from .fock_line import FockVector, apply_E_line, apply_F_line, apply_K_line, _linear
from .pyramid import Pyramid, _is_pyramid, n_fast
from .stepfun import (
    CircleInterval,
    LineInterval,
    StepFunction,
    euler_form_circle,
    format_rational,
    rational,
    sym_form_circle,
)

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# translate sums


def _candidate_shifts(p: Pyramid, I: LineInterval) -> set[int]:
    """Shifts m where ``n_{I+m}(p)`` can be nonzero: an endpoint lands on a
    discontinuity, or the translate contains 0."""
    ms = set()
    for d in p.breakpoints:
        for e in (I.a, I.b):
            m = d - e
            if m.denominator == 1:
                ms.add(int(m))
    # a + m <= 0 < b + m
    ms.update(range(math.floor(-I.b) + 1, math.floor(-I.a) + 1))
    return ms


def _n_shift(p: Pyramid, I: LineInterval, m: int) -> int:
    return n_fast(p, I.a + m, I.b + m)


def n_gt(p: Pyramid, I: LineInterval) -> int:
    return sum(_n_shift(p, I, m) for m in _candidate_shifts(p, I) if m >= 1)


def n_lt(p: Pyramid, I: LineInterval) -> int:
    return sum(_n_shift(p, I, m) for m in _candidate_shifts(p, I) if m <= -1)


def n_bar(p: Pyramid, I: LineInterval) -> int:
    return sum(_n_shift(p, I, m) for m in _candidate_shifts(p, I))


def n_bar_scan(p: Pyramid, I: LineInterval) -> int:
    """Brute-force n-bar over a generous window; a test oracle for :func:`n_bar`."""
    if p.is_zero():
        lo, hi = Fraction(-1), Fraction(1)
    else:
        lo, hi = p.breakpoints[0], p.breakpoints[-1]
    lo_m = math.floor(lo - I.b) - 2
    hi_m = math.ceil(hi - I.a) + 2
    return sum(_n_shift(p, I, m) for m in range(lo_m, hi_m + 1))


# ---------------------------------------------------------------------------
# tuples of lifts


@dataclass(frozen=True)
class LiftTuple:
    """Line lifts whose circle images subdivide ``base`` in circle order."""

    lifts: tuple
    base: CircleInterval

    def __len__(self):
        return len(self.lifts)

    def indicator(self) -> StepFunction:
        return StepFunction.from_intervals((J, 1) for J in self.lifts)

    def __str__(self):
        return "(" + ", ".join(str(J) for J in self.lifts) + ")"


def _cut_offsets(p: Pyramid, J: CircleInterval) -> list[Fraction]:
    """Offsets t in (0, len J) where a subdivision of J may be cut."""
    pts = {x % 1 for x in p.breakpoints} | {Fraction(0)}
    out = set()
    for c in pts:
        t = (c - J.start) % 1
        if 0 < t < J.length:
            out.add(t)
    return sorted(out)


def _lift_choices(p: Pyramid, piece: LineInterval, want: int) -> list[LineInterval]:
    """Translates of ``piece`` that are addable (want=1) / removable (want=-1) to p."""
    out = []
    for m in sorted(_candidate_shifts(p, piece)):
        if _n_shift(p, piece, m) == want:
            out.append(piece.translate(m))
    return out


def _chains(J: CircleInterval, offsets: list[Fraction], choose, increasing: bool):
    """Depth-first walk over subdivisions of J cut at ``offsets``.

    ``choose(piece)`` lists the admissible lifts of a piece (a line interval
    based at ``J.start + t``); consecutive lifts must be strictly separated,
    increasing for F and decreasing for E.  Yields tuples of lifts.
    """
    ends = offsets + [J.length]
    cache: dict = {}

    def lifts(t0, t1):
        key = (t0, t1)
        if key not in cache:
            cache[key] = choose(LineInterval(J.start + t0, J.start + t1))
        return cache[key]

    def rec(t0, prev):
        for t1 in ends:
            if t1 <= t0:
                continue
            for L in lifts(t0, t1):
                if prev is not None and not (prev.b < L.a if increasing else L.b < prev.a):
                    continue
                if t1 == J.length:
                    yield (L,)
                else:
                    for rest in rec(t1, L):
                        yield (L,) + rest

    yield from rec(Fraction(0), None)


def _successive(p: Pyramid, lifts, sign: int) -> bool:
    """Apply ``±1`` along lifts last-to-first, requiring a pyramid at each step."""
    jumps = p.f.jumps()
    for L in reversed(lifts):
        jumps[L.a] = jumps.get(L.a, 0) + sign
        jumps[L.b] = jumps.get(L.b, 0) - sign
        if not _is_pyramid(StepFunction.from_jumps(jumps)):
            return False
    return True


def _enumerate(J: CircleInterval, p: Pyramid, want: int) -> list[LiftTuple]:
    if not J.is_strict:
        raise ValueError("E/F generators need a strict circle interval")
    out = []
    chains = _chains(J, _cut_offsets(p, J), lambda piece: _lift_choices(p, piece, want), want == 1)
    for lifts in chains:
        if _successive(p, lifts, want):
            out.append(LiftTuple(lifts, J))
    return out


def enumerate_F_tuples(J: CircleInterval, p: Pyramid) -> list[LiftTuple]:
    return _enumerate(J, p, 1)


def enumerate_E_tuples(J: CircleInterval, p: Pyramid) -> list[LiftTuple]:
    return _enumerate(J, p, -1)


def individual_tuples(J: CircleInterval, p: Pyramid, kind: str) -> list[LiftTuple]:
    """Tuples whose lifts are each addable (F) / removable (E) to p on their own.

    No successive check; compared against the enumerators to probe whether the
    two readings of addability ever differ.
    """
    want = 1 if kind == "F" else -1
    chains = _chains(J, _cut_offsets(p, J), lambda piece: _lift_choices(p, piece, want), want == 1)
    return [LiftTuple(lifts, J) for lifts in chains]


# ---------------------------------------------------------------------------
# closed formulas


def _pairing(L: LineInterval, p: Pyramid) -> int:
    # <1_L, p> = p(a) - p(b)
    return p(L.a) - p(L.b)


def f_tuple_coefficient(t: LiftTuple, p: Pyramid, normalise: bool = True) -> LaurentCoeff:
    l = len(t)
    e = Fraction(l - 1, 2) + sum(n_gt(p, L) for L in t.lifts)
    if normalise:
        e += Fraction(l, 2)
    c = signed_v_power(1, e) * neg_v_power(sum(_pairing(L, p) for L in t.lifts))
    return c * (-V_MINUS_VINV) ** (l - 1)


def e_tuple_coefficient(t: LiftTuple, p: Pyramid, normalise: bool = True) -> LaurentCoeff:
    l = len(t)
    e = Fraction(l - 1, 2) - sum(n_lt(p, L) for L in t.lifts)
    sign = 1
    if normalise:
        e += Fraction(l, 2)
        sign = -1 if l % 2 else 1
    c = signed_v_power(sign, e) * neg_v_power(-sum(_pairing(L, p) for L in t.lifts))
    return c * V_MINUS_VINV ** (l - 1)


def _shifted(p: Pyramid, t: LiftTuple, sign: int) -> Pyramid:
    return Pyramid(p.f + t.indicator().scale(sign))


def _F_circle_basis(J: CircleInterval, p: Pyramid, normalise: bool = True):
    return [(_shifted(p, t, 1), f_tuple_coefficient(t, p, normalise)) for t in enumerate_F_tuples(J, p)]


def _E_circle_basis(J: CircleInterval, p: Pyramid, normalise: bool = True):
    return [(_shifted(p, t, -1), e_tuple_coefficient(t, p, normalise)) for t in enumerate_E_tuples(J, p)]


def _lift_for_K(J: CircleInterval) -> LineInterval:
    return J.lift(0)


def k_circle_exponent(J: CircleInterval, p: Pyramid) -> int:
    return n_bar(p, _lift_for_K(J))


def _K_circle_basis(J: CircleInterval, p: Pyramid):
    return [(p, LaurentCoeff.v_power(k_circle_exponent(J, p)))]


apply_K_circle = _linear(_K_circle_basis)


def apply_F_circle(J: CircleInterval, w: FockVector, normalise: bool = True) -> FockVector:
    return _linear(lambda J_, p: _F_circle_basis(J_, p, normalise))(J, w)


def apply_E_circle(J: CircleInterval, w: FockVector, normalise: bool = True) -> FockVector:
    return _linear(lambda J_, p: _E_circle_basis(J_, p, normalise))(J, w)


def apply_K_circle_power(J: CircleInterval, k: int, w: FockVector) -> FockVector:
    return _linear(lambda J_, p: [(p, LaurentCoeff.v_power(k * k_circle_exponent(J_, p)))])(J, w)


# ---------------------------------------------------------------------------
# folding expansion


def _window(p: Pyramid) -> tuple[Fraction, Fraction]:
    if p.is_zero():
        return Fraction(-2), Fraction(2)
    return p.breakpoints[0] - 2, p.breakpoints[-1] + 2


def _window_lifts(piece: LineInterval, p: Pyramid) -> list[LineInterval]:
    """All translates meeting the scan window or containing 0."""
    lo, hi = _window(p)
    out = []
    for m in range(math.floor(lo - piece.b), math.ceil(hi - piece.a) + 1):
        L = piece.translate(m)
        if (L.b > lo and L.a < hi) or L.contains_zero():
            out.append(L)
    return out


def _expansion_cuts(p: Pyramid, J: CircleInterval) -> list[Fraction]:
    # the admissible cut points plus one generic point in every gap between them,
    # so that terms which vanish for lack of a discontinuity are exercised too
    base = _cut_offsets(p, J)
    ts = [Fraction(0)] + base + [J.length]
    mids = [(a + b) / 2 for a, b in zip(ts, ts[1:])]
    return sorted(set(base) | set(mids))


def _k_shift_sum(p: Pyramid, L: LineInterval, direction: int) -> int:
    """Σ_{m>0} n_{L + direction*m}(p), scanned over the window."""
    lo, hi = _window(p)
    total = 0
    m = 1
    while True:
        T = L.translate(direction * m)
        if (direction > 0 and T.a > hi) or (direction < 0 and T.b < lo):
            break
        total += n_fast(p, T.a, T.b)
        m += 1
    return total


def _expand(J: CircleInterval, p: Pyramid, kind: str) -> FockVector:
    if not J.is_strict:
        raise ValueError("E/F generators need a strict circle interval")
    start = FockVector.basis(p)
    line_op = apply_F_line if kind == "F" else apply_E_line

    def choose(piece):
        # every translate in the window on which the line operator acts at all
        return [L for L in _window_lifts(piece, p) if line_op(L, start)]

    total = FockVector()
    for lifts in _chains(J, _expansion_cuts(p, J), choose, kind == "F"):
        l = len(lifts)
        if kind == "F":
            # K-factors at right translates act first
            k_exp = sum(_k_shift_sum(p, L, +1) for L in lifts)
            scal = signed_v_power(1, Fraction(l - 1, 2) + k_exp) * (-V_MINUS_VINV) ** (l - 1)
        else:
            k_exp = -sum(_k_shift_sum(p, L, -1) for L in lifts)
            scal = signed_v_power(1, Fraction(l - 1, 2) + k_exp) * V_MINUS_VINV ** (l - 1)
        w = start.scale(scal)
        for L in reversed(lifts):
            w = line_op(L, w)
            if not w:
                break
        total = total + w
    return total


def _expand_linear(J, x, kind) -> FockVector:
    if isinstance(x, Pyramid):
        return _expand(J, x, kind)
    out = FockVector()
    for p, c in x.items():
        out = out + _expand(J, p, kind).scale(c)
    return out


def expand_r_F(J: CircleInterval, x) -> FockVector:
    """Folding expansion of ``F_J`` on a pyramid or a FockVector."""
    return _expand_linear(J, x, "F")


def expand_r_E(J: CircleInterval, x) -> FockVector:
    return _expand_linear(J, x, "E")


# ---------------------------------------------------------------------------
# generators, grammar


@dataclass(frozen=True)
class CircleGenerator:
    kind: str
    label: CircleInterval
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("E", "F", "K"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("E", "F") and not self.label.is_strict:
            raise ValueError("E/F generators need a strict circle interval")
        if self.kind != "K" and self.power != 1:
            raise ValueError("only K generators take an exponent")

    def apply(self, w: FockVector) -> FockVector:
        if self.kind == "E":
            return apply_E_circle(self.label, w)
        if self.kind == "F":
            return apply_F_circle(self.label, w)
        return apply_K_circle_power(self.label, self.power, w)

    def __str__(self):
        body = f"{self.kind}{self.label}"
        return body if self.power == 1 else f"{body}^{self.power}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_CIRCLE_TOKEN = re.compile(
    rf"\s*([EFK])\s*\(\s*(?:(full)|({_RAT})\s*,\s*({_RAT}))\s*\)(?:\s*\^\s*([+-]?\d+))?\s*"
)


def parse_circle_word(text: str) -> list[CircleGenerator]:
    """Parse e.g. ``"E(0,1/2) F(1/4,1/3) K(full)"``."""
    from .fock_line import WordParseError

    gens = []
    pos = 0
    s = text.rstrip()
    while pos < len(s):
        if s[pos] in " *\t":
            pos += 1
            continue
        m = _CIRCLE_TOKEN.match(s, pos)
        if not m:
            raise WordParseError(f"cannot read circle generator in {text!r}", pos)
        kind, full, a, length, k = m.groups()
        try:
            J = CircleInterval.full() if full else CircleInterval(rational(a), rational(length))
            gens.append(CircleGenerator(kind, J, int(k) if k is not None else 1))
        except (ValueError, ZeroDivisionError) as exc:
            raise WordParseError(str(exc), pos) from None
        pos = m.end()
    return gens


def apply_circle_word(gens, w: FockVector) -> FockVector:
    for g in reversed(gens):
        w = g.apply(w)
        if not w:
            break
    return w


def circle_form(I: CircleInterval, J: CircleInterval) -> int:
    return sym_form_circle(I.indicator(), J.indicator())


def circle_euler(I: CircleInterval, J: CircleInterval) -> int:
    return euler_form_circle(I.indicator(), J.indicator())


def format_circle_interval(J: CircleInterval) -> str:
    if not J.is_strict:
        return "(full)"
    return f"({format_rational(J.start)},{format_rational(J.length)})"
