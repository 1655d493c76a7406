"""Fock space on pyramids and the action of the line quantum group."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .coeff import LaurentCoeff, neg_v_power, signed_v_power
from .pyramid import (
    EMPTY,
    Pyramid,
    add_interval,
    nested_decomposition,
    regrid,
    remove_interval,
)
from .stepfun import LineInterval, StepFunction, euler_form_line, format_rational, rational, sym_form_line

ONE = LaurentCoeff.one()


class FockVector:
    """Finite linear combination of pyramids with Laurent coefficients."""

    __slots__ = ("_terms",)

    @staticmethod
    def _key(p):
        return p.sort_key()

    def __init__(self, terms: Mapping[Pyramid, LaurentCoeff] | None = None):
        clean = {}
        if terms:
            for p, c in terms.items():
                if not isinstance(c, LaurentCoeff):
                    c = LaurentCoeff.const(c)
                if c:
                    clean[p] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: self._key(kv[0])))

    @classmethod
    def basis(cls, p: Pyramid, c: LaurentCoeff = ONE) -> "FockVector":
        return cls({p: c})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({EMPTY: ONE})

    @classmethod
    def zero(cls) -> "FockVector":
        return cls()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, p: Pyramid) -> LaurentCoeff:
        return self._terms.get(p, LaurentCoeff.zero())

    def support(self) -> list[Pyramid]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out[p] + c if p in out else c
        return type(self)(out)

    def __neg__(self):
        return type(self)({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        if not isinstance(c, LaurentCoeff):
            c = LaurentCoeff.const(c)
        if not c:
            return type(self)()
        return type(self)({p: c * x for p, x in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c}) |{p}>" for p, c in self._terms.items())

    __repr__ = __str__

    def to_json(self) -> list:
        return [{"pyramid": p.to_json(), "coeff": c.to_json()} for p, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "FockVector":
        out: dict = {}
        for item in data:
            p = Pyramid.from_json(item["pyramid"])
            out[p] = out.get(p, LaurentCoeff.zero()) + LaurentCoeff.from_json(item["coeff"])
        return cls(out)


def _linear(fn):
    """Lift a basis map ``p -> list[(q, c)]`` to FockVectors."""

    def apply(arg, w: FockVector) -> FockVector:
        out: dict = {}
        for p, c in w.items():
            for q, d in fn(arg, p):
                x = c * d
                out[q] = out[q] + x if q in out else x
        return FockVector(out)

    apply.__name__ = fn.__name__
    apply.__doc__ = fn.__doc__
    return apply


# -- basis actions ------------------------------------------------------------


def e_coefficient(J: LineInterval, p: Pyramid) -> LaurentCoeff:
    """``-v^{1/2} (-v)^{p(b) - p(a)}``."""
    return signed_v_power(-1, Fraction(1, 2)) * neg_v_power(p(J.b) - p(J.a))


def f_coefficient(J: LineInterval, p: Pyramid) -> LaurentCoeff:
    """``v^{1/2} (-v)^{p(a) - p(b)}``."""
    return signed_v_power(1, Fraction(1, 2)) * neg_v_power(p(J.a) - p(J.b))


def _E_basis(J: LineInterval, p: Pyramid):
    q = remove_interval(p, J)
    return [] if q is None else [(q, e_coefficient(J, p))]


def _F_basis(J: LineInterval, p: Pyramid):
    q = add_interval(p, J)
    return [] if q is None else [(q, f_coefficient(J, p))]


def k_exponent(f: StepFunction, p: Pyramid) -> int:
    """``f(0) - (f, p)``, equal to ``n_J(p)`` when f is an indicator."""
    return f(0) - sym_form_line(f, p.f)


def _K_basis(f: StepFunction, p: Pyramid):
    return [(p, LaurentCoeff.v_power(k_exponent(f, p)))]


apply_E_line = _linear(_E_basis)
apply_F_line = _linear(_F_basis)
apply_K_line = _linear(_K_basis)


# -- generators and words ------------------------------------------------------


@dataclass(frozen=True)
class LineGenerator:
    """``E_J``, ``F_J`` or ``K_f``; K labels may be any step function."""

    kind: str
    label: Union[LineInterval, StepFunction]

    def __post_init__(self):
        if self.kind not in ("E", "F", "K"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("E", "F") and not isinstance(self.label, LineInterval):
            raise TypeError("E/F generators are labelled by intervals")
        if self.kind == "K" and isinstance(self.label, LineInterval):
            object.__setattr__(self, "label", self.label.indicator())

    @classmethod
    def E(cls, J: LineInterval) -> "LineGenerator":
        return cls("E", J)

    @classmethod
    def F(cls, J: LineInterval) -> "LineGenerator":
        return cls("F", J)

    @classmethod
    def K(cls, f, power: int = 1) -> "LineGenerator":
        if isinstance(f, LineInterval):
            f = f.indicator()
        return cls("K", f.scale(power))

    def apply(self, w: FockVector) -> FockVector:
        if self.kind == "E":
            return apply_E_line(self.label, w)
        if self.kind == "F":
            return apply_F_line(self.label, w)
        return apply_K_line(self.label, w)

    def __str__(self) -> str:
        if self.kind in ("E", "F"):
            return f"{self.kind}{self.label}"
        return f"K<{self.label.to_text()}>"


def apply_word(gens: Sequence, w: FockVector, coeff=None) -> FockVector:
    """Apply a product of generators, rightmost first, optionally scaled.

    An empty word is the identity.
    """
    for g in reversed(gens):
        w = g.apply(w)
        if not w:
            break
    return w if coeff is None else w.scale(coeff)


def apply_combination(terms: Iterable, w: FockVector) -> FockVector:
    """``sum_k c_k * word_k (w)`` for ``terms = [(word, c), ...]``."""
    out = FockVector()
    for word, c in terms:
        out = out + apply_word(word, w, c)
    return out


def apply_monomial(word: Sequence, w: FockVector) -> FockVector:
    return apply_word(list(word), w)


def raise_from_vacuum(p: Pyramid) -> tuple[FockVector, LaurentCoeff]:
    """``F_{I_s} ... F_{I_1} |0>`` along the level-set decomposition.

    Returns the vector and the monomial c with vector = c |p>.
    """
    w = FockVector.vacuum()
    for J in nested_decomposition(p):
        w = apply_F_line(J, w)
    c = w.coefficient(p)
    if len(w) != 1 or not c.is_monomial():  # pragma: no cover - guarded by tests
        raise ArithmeticError(f"raising {p} did not give a monomial multiple")
    return w, c


def lower_to_vacuum(p: Pyramid, w: FockVector) -> FockVector:
    """``E_{I_1} ... E_{I_s} w`` for the level sets of p (innermost applied first)."""
    for J in reversed(nested_decomposition(p)):
        w = apply_E_line(J, w)
    return w


def regrid_vector(w: FockVector, table) -> FockVector:
    return FockVector({regrid(p, table): c for p, c in w.items()})


# -- text grammar ----------------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_LINE_TOKEN = re.compile(
    rf"\s*([EFK])\s*\[\s*({_RAT})\s*,\s*({_RAT})\s*\)(?:\s*\^\s*([+-]?\d+))?\s*"
)


class WordParseError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


def parse_line_word(text: str) -> list[LineGenerator]:
    """Parse e.g. ``"E[0,1) F[-1/2,1/3) K[0,1)^-2"``."""
    gens = []
    pos = 0
    s = text.rstrip()
    while pos < len(s):
        if s[pos] in " *\t":
            pos += 1
            continue
        m = _LINE_TOKEN.match(s, pos)
        if not m:
            raise WordParseError(f"cannot read line generator in {text!r}", pos)
        kind, a, b, k = m.groups()
        if k is not None and kind != "K":
            raise WordParseError("only K generators take an exponent", pos)
        try:
            J = LineInterval(rational(a), rational(b))
        except (ValueError, ZeroDivisionError) as exc:
            raise WordParseError(str(exc), pos) from None
        if kind == "K":
            gens.append(LineGenerator.K(J, int(k) if k is not None else 1))
        else:
            gens.append(LineGenerator(kind, J))
        pos = m.end()
    return gens


def format_line_generator(g: LineGenerator) -> str:
    if g.kind != "K":
        return f"{g.kind}[{format_rational(g.label.a)},{format_rational(g.label.b)})"
    return f"K<{g.label.to_text()}>"


def commutator(A, B, w: FockVector) -> FockVector:
    """``[A, B] w`` where A, B are callables on FockVectors."""
    return A(B(w)) - B(A(w))


def E_op(J):
    return lambda w: apply_E_line(J, w)


def F_op(J):
    return lambda w: apply_F_line(J, w)


def K_op(f, power: int = 1):
    if isinstance(f, LineInterval):
        f = f.indicator()
    f = f.scale(power)
    return lambda w: apply_K_line(f, w)


__all__ = [
    "FockVector",
    "LineGenerator",
    "apply_E_line",
    "apply_F_line",
    "apply_K_line",
    "apply_word",
    "apply_combination",
    "raise_from_vacuum",
    "lower_to_vacuum",
    "parse_line_word",
    "e_coefficient",
    "f_coefficient",
    "k_exponent",
    "euler_form_line",
]
