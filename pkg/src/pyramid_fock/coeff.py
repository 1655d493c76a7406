"""Exact Laurent polynomials in u = v^(1/2) with rational coefficients.

Every coefficient that appears in the Fock space actions lives in
Q[u, u^-1].  Exponents are stored as integer powers of u, so v^k is u^(2k)
and v^(1/2) is u.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class LaurentCoeff:
    """Immutable sparse Laurent polynomial ``sum c_k u^k``.

    The term map never stores zero coefficients, so structural equality is
    mathematical equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(k)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentCoeff":
        return _ZERO

    @classmethod
    def one(cls) -> "LaurentCoeff":
        return _ONE

    @classmethod
    def const(cls, c: Scalar) -> "LaurentCoeff":
        return cls({0: c})

    @classmethod
    def monomial(cls, u_exp: int, c: Scalar = 1) -> "LaurentCoeff":
        return cls({u_exp: c})

    @classmethod
    def v_power(cls, k: int) -> "LaurentCoeff":
        """v^k for integer k."""
        return cls({2 * k: 1})

    # -- accessors --------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of Q[u, u^-1] are exactly the nonzero monomials."""
        return self.is_monomial()

    def min_exp(self) -> int:
        return next(iter(self._terms))

    def max_exp(self) -> int:
        return next(reversed(self._terms))

    def coefficient(self, u_exp: int) -> Fraction:
        return self._terms.get(u_exp, Fraction(0))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentCoeff":
        if isinstance(other, LaurentCoeff):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentCoeff.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentCoeff(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentCoeff({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentCoeff(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentCoeff":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = _ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "LaurentCoeff":
        """Inverse of a unit (nonzero monomial)."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit of Q[u, u^-1]")
        ((k, c),) = self._terms.items()
        return LaurentCoeff({-k: 1 / c})

    def shift(self, u_exp: int) -> "LaurentCoeff":
        """Multiply by u^u_exp."""
        return LaurentCoeff({k + u_exp: c for k, c in self._terms.items()})

    def divmod(self, other: "LaurentCoeff") -> tuple["LaurentCoeff", "LaurentCoeff"]:
        """Polynomial long division after normalising both sides to Q[u].

        The remainder has no term at or above ``other``'s span; division is
        exact iff the remainder is zero.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return _ZERO, _ZERO
        d_lo, d_hi = other.min_exp(), other.max_exp()
        lead = other._terms[d_hi]
        rem = dict(self._terms)
        quot: dict[int, Fraction] = {}
        rem_lo = min(rem)
        # leading-term elimination until the remainder's span is shorter than the divisor's
        while rem:
            hi = max(rem)
            if hi - rem_lo < d_hi - d_lo:
                break
            c = rem[hi] / lead
            q_exp = hi - d_hi
            quot[q_exp] = quot.get(q_exp, 0) + c
            for k, dc in other._terms.items():
                e = k + q_exp
                val = rem.get(e, 0) - c * dc
                if val:
                    rem[e] = val
                else:
                    rem.pop(e, None)
        return LaurentCoeff(quot), LaurentCoeff(rem)

    def exact_div(self, other: "LaurentCoeff") -> "LaurentCoeff":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def evaluate(self, u: Scalar) -> Fraction:
        """Specialise u to a nonzero rational."""
        u = Fraction(u)
        return sum((c * u**k for k, c in self._terms.items()), Fraction(0))

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentCoeff.const(other)
        if not isinstance(other, LaurentCoeff):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- text / json -------------------------------------------------------

    def __str__(self) -> str:
        return format_coeff(self)

    def __repr__(self) -> str:
        return f"LaurentCoeff({format_coeff(self)!r})"

    def to_json(self) -> list[list[int]]:
        return [[k, c.numerator, c.denominator] for k, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "LaurentCoeff":
        return cls({int(k): Fraction(int(n), int(d)) for k, n, d in data})


_ZERO = LaurentCoeff()
_ONE = LaurentCoeff({0: 1})

#: u = v^(1/2)
U = LaurentCoeff({1: 1})
#: v = u^2
V = LaurentCoeff({2: 1})
V_INV = LaurentCoeff({-2: 1})


def add(a: LaurentCoeff, b: LaurentCoeff) -> LaurentCoeff:
    return a + b


def mul(a: LaurentCoeff, b: LaurentCoeff) -> LaurentCoeff:
    return a * b


def signed_v_power(sign: int, half_exponent: Scalar) -> LaurentCoeff:
    """sign * v^e where e is an integer or half-integer."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    u_exp = Fraction(half_exponent) * 2
    if u_exp.denominator != 1:
        raise ValueError(f"exponent {half_exponent} is not a multiple of 1/2")
    return LaurentCoeff({int(u_exp): sign})


def neg_v_power(k: int) -> LaurentCoeff:
    """(-v)^k = (-1)^k v^k for integer k."""
    return LaurentCoeff({2 * k: -1 if k % 2 else 1})


def quantum_integer(n: int) -> LaurentCoeff:
    """[n] = (v^n - v^-n)/(v - v^-1) = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    if n == 0:
        return _ZERO
    if n < 0:
        return -quantum_integer(-n)
    return LaurentCoeff({2 * k: 1 for k in range(1 - n, n, 2)})


def quantum_factorial(n: int) -> LaurentCoeff:
    if n < 0:
        raise ValueError("quantum factorial needs n >= 0")
    out = _ONE
    for k in range(1, n + 1):
        out = out * quantum_integer(k)
    return out


# v - v^-1, the denominator of the [E, F] relation
V_MINUS_VINV = LaurentCoeff({2: 1, -2: -1})


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(u(?:\^\(?(-?\d+)\)?)?)?\s*"
)


def format_coeff(c: LaurentCoeff) -> str:
    """Canonical text: ``c*u^k`` terms with ascending exponents.

    Unit coefficients and ``u^0`` are abbreviated (``u^3``, ``-u^-1``, ``2``).
    """
    if c.is_zero():
        return "0"
    parts = []
    for i, (k, a) in enumerate(c.items()):
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = f"u^{k}"
        else:
            body = f"{mag}*u^{k}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_coeff_v(c: LaurentCoeff) -> str:
    """Human-readable form in powers of v, e.g. ``v^{1/2} - 2 v^{-1}``."""
    if c.is_zero():
        return "0"
    parts = []
    for i, (k, a) in enumerate(c.items()):
        e = Fraction(k, 2)
        if e == 0:
            power = ""
        elif e == 1:
            power = "v"
        else:
            power = f"v^{{{e}}}"
        mag = abs(a)
        if not power:
            body = str(mag)
        elif mag == 1:
            body = power
        else:
            body = f"{mag} {power}"
        if i == 0:
            parts.append(body if a > 0 else f"-{body}")
        else:
            parts.append(f" {'-' if a < 0 else '+'} {body}")
    return "".join(parts)


def parse_coeff(text: str) -> LaurentCoeff:
    """Inverse of :func:`format_coeff` (also accepts ``u`` for ``u^1``)."""
    s = text.strip()
    if s == "0":
        return _ZERO
    out: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse coefficient {text!r} at position {pos}")
        sign, num, upart, exp = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing sign in {text!r} at position {pos}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        k = (int(exp) if exp is not None else 1) if upart else 0
        out[k] = out.get(k, 0) + c
        pos = m.end()
        first = False
    return LaurentCoeff(out)
