from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import circle_intervals, line_intervals, step_functions
from pyramid_fock.stepfun import (
    CircleInterval,
    CircleStepFunction,
    LineInterval,
    StepFunction,
    euler_form_circle,
    euler_form_line,
    h_norm,
    integral,
    project_to_circle,
    sym_form_circle,
    sym_form_line,
    translate,
)

EPS = Fraction(1, 10**6)


def ind(a, b) -> StepFunction:
    return LineInterval(Fraction(a), Fraction(b)).indicator()


def value_oracle(f: StepFunction, x) -> int:
    # linear scan over plateaus, no bisection
    for a, b, v in f.plateaus():
        if a <= x < b:
            return v
    return 0


def euler_oracle(f: StepFunction, g: StepFunction) -> int:
    """<f, g> summed over every breakpoint of either function using sampled limits."""
    pts = set(f.breakpoints) | set(g.breakpoints)
    total = 0
    for x in pts:
        g_minus, g_plus = value_oracle(g, x - EPS), value_oracle(g, x)
        total += value_oracle(f, x - EPS) * (g_minus - g_plus)
    return total


# -- basic structure ---------------------------------------------------------


def test_canonical_form_merges_equal_plateaus():
    f = StepFunction((0, 1, 2), (1, 1))
    assert f == ind(0, 2)
    assert StepFunction((0, 1), (0,)).is_zero()


def test_text_round_trip():
    f = StepFunction.from_text("-1/2:3:0:-1:5/3")
    assert StepFunction.from_text(f.to_text()) == f
    assert StepFunction.zero().to_text() == "0"
    with pytest.raises(ValueError):
        StepFunction.from_text("0:1")


@given(step_functions())
def test_json_round_trip(f):
    assert StepFunction.from_json(f.to_json()) == f


@given(step_functions(), st.fractions(-4, 4, max_denominator=8))
def test_evaluation_matches_scan(f, x):
    assert f(x) == value_oracle(f, x)
    assert f.left_limit(x) == value_oracle(f, x - EPS)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        LineInterval(1, 1)


# -- Euler form ---------------------------------------------------------------


def test_euler_examples():
    J = ind(0, 1)
    assert euler_form_line(J, J) == 1
    assert euler_form_line(ind(0, 1), ind(1, 2)) == -1
    assert euler_form_line(StepFunction.zero(), ind(-3, 5)) == 0


def test_symmetric_examples():
    J = ind(Fraction(-1, 3), Fraction(1, 2))
    assert sym_form_line(J, J) == 2
    a, b, c = Fraction(-1, 2), Fraction(1, 4), Fraction(2)
    assert sym_form_line(ind(a, b), ind(b, c)) == -1
    assert sym_form_line(ind(b, c), ind(a, b)) == -1


@given(step_functions(), step_functions())
def test_euler_form_against_sampling(f, g):
    assert euler_form_line(f, g) == euler_oracle(f, g)


@given(step_functions(), step_functions(), step_functions())
def test_euler_form_bilinear(f, g, h):
    assert euler_form_line(f + g, h) == euler_form_line(f, h) + euler_form_line(g, h)
    assert euler_form_line(f, g + h) == euler_form_line(f, g) + euler_form_line(f, h)


@given(step_functions(), step_functions(), st.integers(-3, 3))
def test_forms_translation_invariant(f, g, m):
    assert euler_form_line(translate(f, m), translate(g, m)) == euler_form_line(f, g)
    assert sym_form_line(f, g) == sym_form_line(g, f)


# -- translation, h, integral ----------------------------------------------------


@given(step_functions(), st.fractions(-3, 3, max_denominator=5))
def test_translation_group(f, m):
    assert translate(f, 0) == f
    assert translate(translate(f, m), -m) == f


def test_translate_shifts_right():
    assert translate(ind(0, 1), 1) == ind(1, 2)


def h_oracle(f: StepFunction, reach: int = 12) -> int:
    return -sum(euler_oracle(f, translate(f, l)) for l in range(-reach, 0))


def test_h_examples():
    assert h_norm(StepFunction.zero()) == 0
    assert h_norm(ind(0, 1)) == 0
    assert h_norm(ind(0, 2)) == h_oracle(ind(0, 2)) == -1


@given(step_functions(N=2))
def test_h_against_wide_sum(f):
    assert h_norm(f) == h_oracle(f)


def test_integral_examples():
    assert integral(ind(0, 1)) == 1
    assert integral(ind(Fraction(-11, 5), Fraction(2, 5))) == Fraction(13, 5)
    assert integral(StepFunction.zero()) == 0


@given(step_functions(), step_functions())
def test_integral_additive(f, g):
    assert integral(f + g) == integral(f) + integral(g)


# -- circle ------------------------------------------------------------------------


def test_projection_examples():
    assert project_to_circle(ind(0, 1)) == CircleStepFunction.constant(1)
    p = project_to_circle(ind(Fraction(1, 4), Fraction(3, 4)))
    assert [p(x) for x in ("0", "1/4", "1/2", "3/4")] == [0, 1, 1, 0]
    q = project_to_circle(ind(Fraction(-1, 2), Fraction(1, 4)))
    assert [q(x) for x in ("0", "1/8", "1/4", "3/8", "1/2", "7/8")] == [1, 1, 0, 0, 1, 1]


@given(step_functions(), st.fractions(0, 1, max_denominator=12))
def test_projection_is_sum_of_translates(f, x):
    if x == 1:
        x = Fraction(0)
    assert project_to_circle(f)(x) == sum(value_oracle(f, x + n) for n in range(-8, 9))


def test_circle_canonical_form():
    f = CircleStepFunction((Fraction(0), Fraction(1, 2)), (2, 2))
    assert f == CircleStepFunction.constant(2)
    g = CircleStepFunction((Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)), (1, 1, 0))
    assert g.breakpoints == (Fraction(1, 4), Fraction(3, 4))
    assert g(0) == 0 and g(Fraction(1, 2)) == 1


@given(step_functions(), step_functions(N=3))
def test_full_circle_is_radical(f, g):
    full = CircleInterval.full().indicator()
    pf = project_to_circle(f)
    assert sym_form_circle(full, pf) == 0
    assert sym_form_circle(full, project_to_circle(g)) == 0


@given(circle_intervals(), circle_intervals())
def test_circle_form_symmetric(I, J):
    a, b = I.indicator(), J.indicator()
    assert sym_form_circle(a, b) == euler_form_circle(a, b) + euler_form_circle(b, a)
    assert sym_form_circle(a, b) == sym_form_circle(b, a)


def test_circle_self_pairing():
    J = CircleInterval(Fraction(1, 3), Fraction(1, 2))
    assert sym_form_circle(J.indicator(), J.indicator()) == 2


@given(line_intervals(), st.integers(-3, 3))
def test_projection_of_translate(J, m):
    assert project_to_circle(J.indicator()) == project_to_circle(J.translate(m).indicator())


def test_circle_interval_normalisation():
    assert CircleInterval(Fraction(5, 4), Fraction(1, 2)).start == Fraction(1, 4)
    assert CircleInterval(Fraction(1, 3), 1) == CircleInterval.full()
    with pytest.raises(ValueError):
        CircleInterval(0, 0)
