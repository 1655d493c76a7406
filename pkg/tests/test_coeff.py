from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from pyramid_fock.coeff import (
    LaurentCoeff,
    V,
    V_INV,
    format_coeff,
    format_coeff_v,
    neg_v_power,
    parse_coeff,
    quantum_factorial,
    quantum_integer,
    signed_v_power,
)

u = sympy.Symbol("u")

coeffs = st.dictionaries(
    st.integers(-6, 6),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4,
).map(LaurentCoeff)


def to_sympy(c: LaurentCoeff):
    return sum((sympy.Rational(x.numerator, x.denominator) * u**e for e, x in c.items()), sympy.Integer(0))


def test_additive_inverse():
    assert LaurentCoeff({2: 1}) + LaurentCoeff({2: -1}) == LaurentCoeff.zero()
    assert not (LaurentCoeff({2: 1}) - LaurentCoeff({2: 1}))


def test_add_identity_and_constants():
    assert V + V_INV + LaurentCoeff.zero() == V + V_INV
    assert LaurentCoeff.one() + LaurentCoeff.one() == LaurentCoeff.const(2)


def test_products():
    assert (V - V_INV) * (V + V_INV) == LaurentCoeff({4: 1, -4: -1})
    assert neg_v_power(1) * neg_v_power(-1) == LaurentCoeff.one()
    half = signed_v_power(1, Fraction(1, 2))
    assert half * half == V


def test_signed_powers():
    assert signed_v_power(-1, Fraction(1, 2)) == LaurentCoeff({1: -1})
    assert neg_v_power(-1) == LaurentCoeff({-2: -1})
    assert neg_v_power(2) == LaurentCoeff({4: 1})
    with pytest.raises(ValueError):
        signed_v_power(1, Fraction(1, 3))


def test_quantum_numbers():
    assert quantum_integer(2) == V + V_INV
    assert quantum_integer(1) == LaurentCoeff.one()
    assert quantum_integer(0) == LaurentCoeff.zero()
    assert quantum_factorial(3) == (V * V + 1 + V_INV * V_INV) * (V + V_INV)


@given(st.integers(0, 8))
def test_quantum_integer_matches_closed_form(n):
    v = u**2
    expected = sympy.cancel((v**n - v**-n) / (v - 1 / v))
    assert sympy.expand(to_sympy(quantum_integer(n)) - expected) == 0


@given(coeffs, coeffs)
def test_ring_operations_against_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(coeffs, coeffs)
def test_exact_division(a, b):
    if b:
        assert (a * b).exact_div(b) == a


@given(coeffs)
def test_text_round_trip(c):
    assert format_coeff(parse_coeff(format_coeff(c))) == format_coeff(c)
    assert parse_coeff(format_coeff(c)) == c


@given(coeffs)
def test_json_round_trip(c):
    assert LaurentCoeff.from_json(c.to_json()) == c


def test_json_shape():
    assert V.to_json() == [[2, 1, 1]]
    assert LaurentCoeff({-1: Fraction(-3, 2)}).to_json() == [[-1, -3, 2]]


def test_v_display():
    assert format_coeff_v(signed_v_power(1, Fraction(1, 2))) == "v^{1/2}"
    assert format_coeff_v(neg_v_power(-1)) == "-v^{-1}"
    assert format_coeff_v(LaurentCoeff({2: 2})) == "2 v"


def test_monomial_units():
    assert signed_v_power(-1, 3).is_unit()
    assert not quantum_integer(2).is_monomial()
    assert (V * V_INV).inverse() == LaurentCoeff.one()


@given(coeffs, st.sampled_from([2, 3, Fraction(5, 7)]))
def test_evaluate_is_a_ring_map(c, x):
    assert c.evaluate(x) == to_sympy(c).subs(u, sympy.Rational(str(x)))
