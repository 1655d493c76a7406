from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import RATIONAL, line_intervals, pyramids
from pyramid_fock.coeff import LaurentCoeff, V_MINUS_VINV, quantum_integer, signed_v_power
from pyramid_fock.fock_line import (
    E_op,
    F_op,
    FockVector,
    K_op,
    LineGenerator,
    WordParseError,
    apply_E_line,
    apply_F_line,
    apply_K_line,
    apply_word,
    commutator,
    lower_to_vacuum,
    parse_line_word,
    raise_from_vacuum,
    regrid_vector,
)
from pyramid_fock.pyramid import EMPTY, Pyramid, n_interval, nested_decomposition, regrid
from pyramid_fock.stepfun import LineInterval, StepFunction

F = Fraction
HALF = signed_v_power(1, F(1, 2))
vac = FockVector.vacuum()


def L(a, b):
    return LineInterval(F(a), F(b))


def ket(text: str, c=None) -> FockVector:
    return FockVector.basis(Pyramid.from_text(text), c or LaurentCoeff.one())


def v(k) -> LaurentCoeff:
    return signed_v_power(1, F(k))


# -- examples ---------------------------------------------------------------------------


def test_E_examples():
    assert not apply_E_line(L(0, 1), vac)
    assert apply_E_line(L(0, 1), ket("0:1:1")) == FockVector.basis(EMPTY, v(F(-1, 2)))
    assert not apply_E_line(L(3, 4), ket("0:1:1"))


def test_F_examples():
    assert apply_F_line(L(0, 1), vac) == ket("0:1:1", HALF)
    J = L(F(-11, 5), F(5, 2))
    once = apply_F_line(J, vac)
    assert once and not apply_F_line(J, once)


@given(line_intervals())
def test_EF_on_vacuum(J):
    assume(J.contains_zero())
    assert apply_word([LineGenerator.E(J), LineGenerator.F(J)], vac) == vac


def test_K_examples():
    J = L(0, 1)
    assert apply_K_line(J.indicator(), vac) == FockVector.basis(EMPTY, v(1))
    assert apply_K_line(J.indicator(), ket("0:1:1")) == ket("0:1:1", v(-1))
    p = ket(RATIONAL)
    assert apply_K_line(StepFunction.zero(), p) == p


def test_empty_word_is_identity():
    w = ket(RATIONAL)
    assert apply_word([], w) == w


def test_join_orientation_example():
    J1, J2 = L(-1, 0), L(0, 1)
    p = vac
    lhs = apply_F_line(L(-1, 1), p)
    rhs = apply_word([LineGenerator.F(J2), LineGenerator.F(J1)], p, v(F(-1, 2))) - apply_word(
        [LineGenerator.F(J1), LineGenerator.F(J2)], p, HALF
    )
    assert lhs == rhs


def test_raise_from_vacuum():
    w, c = raise_from_vacuum(EMPTY)
    assert w == vac and c == LaurentCoeff.one()
    w, c = raise_from_vacuum(Pyramid.from_text("0:1:1"))
    assert c == HALF and w == ket("0:1:1", HALF)
    p = Pyramid.from_text(RATIONAL)
    w, c = raise_from_vacuum(p)
    assert len(w) == 1 and c.is_monomial()
    # three level sets, each F contributing v^{1/2} times a power of -v
    assert abs(c.min_exp()) % 2 == 1


# -- relations on random states ---------------------------------------------------------------


def qint(n: int) -> LaurentCoeff:
    return quantum_integer(n) if n >= 0 else -quantum_integer(-n)


@given(pyramids(max_height=3), line_intervals())
def test_commutator_is_quantum_integer(p, J):
    w = FockVector.basis(p)
    lhs = commutator(E_op(J), F_op(J), w)
    assert lhs == w.scale(qint(n_interval(p, J)))
    # and the same through the K operators
    k = K_op(J)(w) - K_op(J, -1)(w)
    assert lhs.scale(V_MINUS_VINV) == k


@given(pyramids(max_height=3), line_intervals(), line_intervals())
def test_K_conjugation(p, I, J):
    from pyramid_fock.stepfun import sym_form_line

    w = FockVector.basis(p)
    a = sym_form_line(I.indicator(), J.indicator())
    lhs = K_op(I)(E_op(J)(K_op(I, -1)(w)))
    assert lhs == E_op(J)(w).scale(v(a))
    lhs = K_op(I)(F_op(J)(K_op(I, -1)(w)))
    assert lhs == F_op(J)(w).scale(v(-a))


@given(pyramids(max_height=3), st.data())
def test_join_relation(p, data):
    N = data.draw(st.integers(1, 4))
    a, b, c = sorted(data.draw(st.lists(st.integers(-3 * N, 3 * N), min_size=3, max_size=3, unique=True)))
    J1, J2 = L(F(a, N), F(b, N)), L(F(b, N), F(c, N))
    w = FockVector.basis(p)
    F1, F2, E1, E2 = F_op(J1), F_op(J2), E_op(J1), E_op(J2)
    assert F_op(L(J1.a, J2.b))(w) == F2(F1(w)).scale(v(F(-1, 2))) - F1(F2(w)).scale(HALF)
    assert E_op(L(J1.a, J2.b))(w) == E1(E2(w)).scale(v(F(1, 2))) - E2(E1(w)).scale(v(F(-1, 2)))


@given(pyramids(max_height=3), line_intervals(N=2), line_intervals(N=2))
def test_separated_intervals_commute(p, I, J):
    assume(I.b < J.a or J.b < I.a)
    w = FockVector.basis(p)
    assert not commutator(E_op(I), E_op(J), w)
    assert not commutator(F_op(I), F_op(J), w)
    assert not commutator(E_op(I), F_op(J), w)


@given(pyramids(max_height=3), line_intervals(), line_intervals())
def test_K_multiplicative(p, I, J):
    w = FockVector.basis(p)
    assert K_op(I)(K_op(J)(w)) == K_op(I.indicator() + J.indicator())(w)


@given(pyramids(max_height=4))
def test_raise_then_lower(p):
    w, c = raise_from_vacuum(p)
    assert w == FockVector.basis(p, c)
    down = lower_to_vacuum(p, FockVector.basis(p))
    assert len(down) == 1 and down.coefficient(EMPTY).is_monomial()
    assert len(nested_decomposition(p)) == p.height()


# -- grading and regridding ------------------------------------------------------------------


@given(pyramids(max_height=3), line_intervals())
def test_F_raises_size_by_length(p, J):
    for q, _ in apply_F_line(J, FockVector.basis(p)).items():
        assert q.size() == p.size() + J.length
    for q, _ in apply_E_line(J, FockVector.basis(p)).items():
        assert q.size() == p.size() - J.length


@given(pyramids(N=2, max_height=3), line_intervals(N=2), st.sampled_from([F(1, 3), F(1, 2), F(2), F(5, 4)]),
       st.sampled_from([F(1, 2), F(1), F(3)]))
def test_regrid_equivariance(p, J, s_neg, s_pos):
    table = [(-1, -s_neg), (0, 0), (1, s_pos)]

    def alpha(x):
        return x * (s_pos if x >= 0 else s_neg)

    Ja = L(alpha(J.a), alpha(J.b))
    w = FockVector.basis(p)
    assert regrid_vector(apply_F_line(J, w), table) == apply_F_line(Ja, regrid_vector(w, table))
    assert regrid_vector(apply_E_line(J, w), table) == apply_E_line(Ja, regrid_vector(w, table))
    assert regrid(p, table).height() == p.height()


# -- words ---------------------------------------------------------------------------------


def test_parse_words():
    gens = parse_line_word("E[0,1) F[-1/2,1/3) K[0,1)^-2")
    assert [g.kind for g in gens] == ["E", "F", "K"]
    assert gens[1].label == L(F(-1, 2), F(1, 3))
    assert gens[2].label == L(0, 1).indicator().scale(-2)
    assert parse_line_word("") == []


@pytest.mark.parametrize("bad", ["E[0,1", "G[0,1)", "E[1,0)", "F[0,1)^2", "E[0,1/0)"])
def test_parse_errors(bad):
    with pytest.raises(WordParseError):
        parse_line_word(bad)


@given(pyramids(max_height=3), line_intervals())
def test_json_round_trip(p, J):
    w = apply_F_line(J, FockVector.basis(p)) + FockVector.basis(p, LaurentCoeff.const(F(3, 2)))
    assert FockVector.from_json(w.to_json()) == w
