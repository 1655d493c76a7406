"""Piecewise-constant integer-valued functions on the line and on the circle.

Breakpoints are exact rationals (:class:`fractions.Fraction`).  A line step
function is right-continuous with bounded support; it is stored as the
sorted breakpoints ``x_0 < ... < x_k`` together with the plateau values on
``[x_{i-1}, x_i)``.  Outside ``[x_0, x_k)`` the function is zero.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

ONE = Fraction(1)
ZERO = Fraction(0)


def rational(x: RationalLike) -> Fraction:
    """Parse ``p/q`` strings (optionally signed) and ints; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"decimal literal {x!r} not accepted; use p/q")
        return Fraction(s)
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True, order=True)
class LineInterval:
    """Closed-open interval ``[a, b[`` with ``a < b``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))
        if not self.a < self.b:
            raise ValueError(f"empty interval [{self.a}, {self.b})")

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    def __contains__(self, x) -> bool:
        return self.a <= x < self.b

    def contains_zero(self) -> bool:
        return self.a <= 0 < self.b

    def translate(self, m) -> "LineInterval":
        return LineInterval(self.a + m, self.b + m)

    def indicator(self) -> "StepFunction":
        return StepFunction((self.a, self.b), (1,))

    def is_before(self, other: "LineInterval") -> bool:
        """Strict separation ``self < other``: ``b < c``, adjacency excluded."""
        return self.b < other.a

    def closures_disjoint(self, other: "LineInterval") -> bool:
        return self.b < other.a or other.b < self.a

    def is_subset(self, other: "LineInterval") -> bool:
        return other.a <= self.a and self.b <= other.b

    def __str__(self) -> str:
        return f"[{format_rational(self.a)},{format_rational(self.b)})"

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> "LineInterval":
        return cls(rational(data["a"]), rational(data["b"]))


@dataclass(frozen=True, order=True)
class CircleInterval:
    """Interval ``[start, start+length[`` of S^1 = R/Z.

    ``0 <= start < 1`` and ``0 < length <= 1``; ``length == 1`` is the full
    circle, stored with ``start == 0``.
    """

    start: Fraction
    length: Fraction

    def __post_init__(self):
        start = rational(self.start) % 1
        length = rational(self.length)
        if not 0 < length <= 1:
            raise ValueError(f"circle interval length {length} not in (0, 1]")
        if length == 1:
            start = ZERO
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "length", length)

    @classmethod
    def full(cls) -> "CircleInterval":
        return cls(ZERO, ONE)

    @property
    def is_strict(self) -> bool:
        return self.length < 1

    @property
    def end(self) -> Fraction:
        """End point as a real number ``start + length`` (may exceed 1)."""
        return self.start + self.length

    def lift(self, m: int = 0) -> LineInterval:
        """The line interval ``[start+m, start+length+m[``."""
        return LineInterval(self.start + m, self.start + self.length + m)

    def contains_point(self, x) -> bool:
        if not self.is_strict:
            return True
        t = (rational(x) - self.start) % 1
        return t < self.length

    def indicator(self) -> "CircleStepFunction":
        if not self.is_strict:
            return CircleStepFunction((), (), 1)
        return project_to_circle(self.lift().indicator())

    def left_adjacent_to(self, other: "CircleInterval") -> bool:
        """``self -> other``: disjoint, ``self`` ends where ``other`` starts."""
        if not (self.is_strict and other.is_strict):
            return False
        if self.length + other.length > 1:
            return False
        return self.end % 1 == other.start

    def union_with(self, other: "CircleInterval") -> "CircleInterval":
        if not self.left_adjacent_to(other):
            raise ValueError(f"{self} is not left adjacent to {other}")
        return CircleInterval(self.start, self.length + other.length)

    def is_subset(self, other: "CircleInterval") -> bool:
        if not other.is_strict:
            return True
        if not self.is_strict:
            return False
        off = (self.start - other.start) % 1
        return off + self.length <= other.length

    def intersects(self, other: "CircleInterval") -> bool:
        if not (self.is_strict and other.is_strict):
            return True
        return self.contains_point(other.start) or other.contains_point(self.start)

    def closures_disjoint(self, other: "CircleInterval") -> bool:
        if not (self.is_strict and other.is_strict):
            return False
        gap1 = (other.start - self.end) % 1
        gap2 = (self.start - other.end) % 1
        # closures touch iff one ends exactly where the other starts
        return self.length + other.length < 1 and gap1 != 0 and gap2 != 0 and not self.intersects(other)

    def __str__(self) -> str:
        if not self.is_strict:
            return "(full)"
        return f"({format_rational(self.start)},{format_rational(self.length)})"

    def to_json(self) -> dict:
        return {"start": format_rational(self.start), "length": format_rational(self.length)}

    @classmethod
    def from_json(cls, data: dict) -> "CircleInterval":
        return cls(rational(data["start"]), rational(data["length"]))


# ---------------------------------------------------------------------------
# line step functions


def _canonical(points: Sequence[Fraction], values: Sequence[int]):
    """Merge equal neighbouring plateaus and strip zero ends."""
    # values[i] lives on [points[i], points[i+1]); implicit 0 on both sides
    pts: list[Fraction] = []
    vals: list[int] = []
    prev = 0
    for i, val in enumerate(values):
        if val != prev:
            pts.append(points[i])
            vals.append(val)
            prev = val
    if prev != 0:
        pts.append(points[len(values)])
        vals.append(0)
    # pts[i] is a jump point; vals[i] the value right of it; last val is 0
    if not pts:
        return (), ()
    return tuple(pts), tuple(vals[:-1])


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous bounded-support step function ``R -> Z``.

    Canonical form: consecutive plateau values differ and the first/last
    plateau is nonzero.  ``values[i]`` holds on
    ``[breakpoints[i], breakpoints[i+1])``.
    """

    breakpoints: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        bps = tuple(rational(x) for x in self.breakpoints)
        vals = tuple(int(v) for v in self.values)
        if (bps or vals) and len(bps) != len(vals) + 1:
            raise ValueError("need exactly one more breakpoint than values")
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        bps, vals = _canonical(bps, vals) if vals else ((), ())
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls()

    @classmethod
    def from_jumps(cls, jumps: dict) -> "StepFunction":
        """Build from a map ``x -> f_+(x) - f_-(x)``."""
        xs = sorted(x for x, j in jumps.items() if j)
        if not xs:
            return cls()
        vals = []
        acc = 0
        for x in xs[:-1]:
            acc += jumps[x]
            vals.append(acc)
        if acc + jumps[xs[-1]] != 0:
            raise ValueError("jumps do not sum to zero; support would be unbounded")
        return cls(tuple(xs), tuple(vals))

    @classmethod
    def from_intervals(cls, terms: Iterable[tuple[LineInterval, int]]) -> "StepFunction":
        jumps: dict[Fraction, int] = {}
        for J, c in terms:
            jumps[J.a] = jumps.get(J.a, 0) + c
            jumps[J.b] = jumps.get(J.b, 0) - c
        return cls.from_jumps(jumps)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x) -> int:
        """Value at x (right-continuous)."""
        i = bisect.bisect_right(self.breakpoints, x) - 1
        if i < 0 or i >= len(self.values):
            return 0
        return self.values[i]

    def left_limit(self, x) -> int:
        i = bisect.bisect_left(self.breakpoints, x) - 1
        if i < 0 or i >= len(self.values):
            return 0
        return self.values[i]

    right_limit = __call__

    def jumps(self) -> dict[Fraction, int]:
        """``x -> f_+(x) - f_-(x)`` over the discontinuity set."""
        out = {}
        prev = 0
        for i, x in enumerate(self.breakpoints):
            cur = self.values[i] if i < len(self.values) else 0
            out[x] = cur - prev
            prev = cur
        return out

    def discontinuities(self) -> tuple:
        return self.breakpoints

    def is_zero(self) -> bool:
        return not self.breakpoints

    def plateaus(self):
        """Yield ``(a, b, value)`` for each plateau ``[a, b)``."""
        for i, val in enumerate(self.values):
            yield self.breakpoints[i], self.breakpoints[i + 1], val

    def support(self) -> tuple[Fraction, Fraction] | None:
        if not self.breakpoints:
            return None
        return self.breakpoints[0], self.breakpoints[-1]

    def max_value(self) -> int:
        return max(self.values, default=0)

    def min_value(self) -> int:
        return min(self.values, default=0)

    def is_nonneg(self) -> bool:
        return self.min_value() >= 0

    def is_nonpos(self) -> bool:
        return self.max_value() <= 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "StepFunction") -> "StepFunction":
        jumps = self.jumps()
        for x, j in other.jumps().items():
            jumps[x] = jumps.get(x, 0) + j
        return StepFunction.from_jumps(jumps)

    def __neg__(self) -> "StepFunction":
        return StepFunction(self.breakpoints, tuple(-v for v in self.values))

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self + (-other)

    def scale(self, c: int) -> "StepFunction":
        return StepFunction(self.breakpoints, tuple(c * v for v in self.values)) if c else StepFunction()

    def translate(self, m) -> "StepFunction":
        return translate(self, m)

    def integral(self) -> Fraction:
        return integral(self)

    # -- text / json ---------------------------------------------------------

    def to_text(self) -> str:
        """Compact ``x0:v1:x1:...:xk`` form; ``0`` for the zero function."""
        if not self.breakpoints:
            return "0"
        parts = [format_rational(self.breakpoints[0])]
        for v, x in zip(self.values, self.breakpoints[1:]):
            parts.append(str(v))
            parts.append(format_rational(x))
        return ":".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "StepFunction":
        s = text.strip()
        if s in ("0", ""):
            return cls()
        toks = s.split(":")
        if len(toks) % 2 == 0:
            raise ValueError(f"step function text {text!r} must alternate point:value:...:point")
        pts = [rational(t) for t in toks[0::2]]
        vals = [int(t) for t in toks[1::2]]
        return cls(tuple(pts), tuple(vals))

    def __str__(self) -> str:
        return self.to_text()

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rational(x) for x in self.breakpoints],
            "values": list(self.values),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StepFunction":
        return cls(tuple(rational(x) for x in data["breakpoints"]), tuple(data["values"]))

    def sort_key(self):
        return (self.breakpoints, self.values)


def indicator(J: LineInterval) -> StepFunction:
    return J.indicator()


def integral(f: StepFunction) -> Fraction:
    return sum(((b - a) * v for a, b, v in f.plateaus()), ZERO)


def translate(f: StepFunction, m) -> StepFunction:
    """``tau^m f : t -> f(t - m)``; support moves right by m."""
    m = rational(m)
    return StepFunction(tuple(x + m for x in f.breakpoints), f.values)


def euler_form_line(f: StepFunction, g: StepFunction) -> int:
    """``<f, g> = sum_x f_-(x) (g_-(x) - g_+(x))`` over jumps of g."""
    return sum(f.left_limit(x) * (-j) for x, j in g.jumps().items())


def sym_form_line(f: StepFunction, g: StepFunction) -> int:
    return euler_form_line(f, g) + euler_form_line(g, f)


def h_norm(f: StepFunction) -> int:
    """``h(f) = -sum_{l<0} <f, tau^l f>``; finite because far translates miss the support."""
    sup = f.support()
    if sup is None:
        return 0
    width = sup[1] - sup[0]
    total = 0
    l = -1
    # translates by more than the support width have disjoint closures
    while -l <= width + 1:
        total += euler_form_line(f, translate(f, l))
        l -= 1
    return -total


def is_nonneg(f: StepFunction) -> bool:
    """Membership in F(K)^+."""
    return f.is_nonneg()


def is_nonpos(f: StepFunction) -> bool:
    """Membership in F(K)^-."""
    return f.is_nonpos()


# ---------------------------------------------------------------------------
# circle step functions


@dataclass(frozen=True)
class CircleStepFunction:
    """Right-continuous step function on S^1 = R/Z.

    ``breakpoints`` are sorted points of [0, 1) where the function jumps,
    ``values[i]`` holds on ``[breakpoints[i], breakpoints[i+1])`` and the last
    value wraps around through the basepoint to ``breakpoints[0]``.
    ``offset`` is the value at the basepoint 0.  A constant function has no
    breakpoints and value ``offset``.
    """

    breakpoints: tuple = ()
    values: tuple = ()
    offset: int = 0

    def __post_init__(self):
        bps = tuple(rational(x) for x in self.breakpoints)
        vals = tuple(int(v) for v in self.values)
        if len(bps) != len(vals):
            raise ValueError("circle step function needs one value per breakpoint")
        if any(not 0 <= x < 1 for x in bps):
            raise ValueError("circle breakpoints must lie in [0, 1)")
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        # canonicalise: drop breakpoints where the value does not change
        n = len(vals)
        keep_b, keep_v = [], []
        for i in range(n):
            if vals[i] != vals[i - 1] or n == 1:
                keep_b.append(bps[i])
                keep_v.append(vals[i])
        if n == 1:
            keep_b, keep_v = [], []
            offset = vals[0]
        elif keep_v:
            # value at 0 is the value of the last plateau starting at or before 0
            offset = keep_v[-1] if keep_b[0] > 0 else keep_v[0]
        else:
            offset = vals[0] if vals else int(self.offset)
        object.__setattr__(self, "breakpoints", tuple(keep_b))
        object.__setattr__(self, "values", tuple(keep_v))
        object.__setattr__(self, "offset", int(offset))

    @classmethod
    def constant(cls, c: int) -> "CircleStepFunction":
        return cls((), (), c)

    @classmethod
    def from_jumps(cls, jumps: dict, base: int) -> "CircleStepFunction":
        """Jumps on [0,1) plus the left limit at 0 (``base``)."""
        xs = sorted(x for x, j in jumps.items() if j)
        if sum(jumps[x] for x in xs) != 0:
            raise ValueError("circle jumps must sum to zero")
        if not xs:
            return cls((), (), base)
        vals = []
        acc = base
        for x in xs:
            acc += jumps[x]
            vals.append(acc)
        return cls(tuple(xs), tuple(vals))

    def __call__(self, x) -> int:
        x = rational(x) % 1
        if not self.breakpoints:
            return self.offset
        i = bisect.bisect_right(self.breakpoints, x) - 1
        return self.values[i]  # i == -1 wraps to the last plateau

    def left_limit(self, x) -> int:
        x = rational(x) % 1
        if not self.breakpoints:
            return self.offset
        i = bisect.bisect_left(self.breakpoints, x) - 1
        return self.values[i]

    def jumps(self) -> dict[Fraction, int]:
        return {x: self.values[i] - self.values[i - 1] for i, x in enumerate(self.breakpoints)}

    def __add__(self, other: "CircleStepFunction") -> "CircleStepFunction":
        jumps = self.jumps()
        for x, j in other.jumps().items():
            jumps[x] = jumps.get(x, 0) + j
        return CircleStepFunction.from_jumps(jumps, self.left_limit(0) + other.left_limit(0))

    def __neg__(self) -> "CircleStepFunction":
        return CircleStepFunction(self.breakpoints, tuple(-v for v in self.values), -self.offset)

    def __sub__(self, other):
        return self + (-other)

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rational(x) for x in self.breakpoints],
            "values": list(self.values),
            "offset": self.offset,
        }


def project_to_circle(f: StepFunction) -> CircleStepFunction:
    """Sum of all integer translates of f, read on S^1."""
    jumps: dict[Fraction, int] = {}
    for x, j in f.jumps().items():
        r = x % 1
        jumps[r] = jumps.get(r, 0) + j
    # left limit at 0 on the circle = sum over integers n of f_-(n)
    base = 0
    sup = f.support()
    if sup is not None:
        for n in range(math.floor(sup[0]), math.ceil(sup[1]) + 1):
            base += f.left_limit(n)
    return CircleStepFunction.from_jumps(jumps, base)


def euler_form_circle(f: CircleStepFunction, g: CircleStepFunction) -> int:
    return sum(f.left_limit(x) * (-j) for x, j in g.jumps().items())


def sym_form_circle(f: CircleStepFunction, g: CircleStepFunction) -> int:
    return euler_form_circle(f, g) + euler_form_circle(g, f)
