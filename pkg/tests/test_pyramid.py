from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from conftest import RATIONAL, STAIRCASE, line_intervals, pyramids, step_functions
from pyramid_fock.pyramid import (
    EMPTY,
    JumpTooLarge,
    MaxNotAtZero,
    NotIntegral,
    NotMonotone,
    NotNonneg,
    NotUnimodal,
    Partition,
    Pyramid,
    PyramidError,
    SizeMismatch,
    ZeroNotFixed,
    add_interval,
    classical_dominance_leq,
    discontinuities,
    dominance_leq,
    grid_pyramids,
    heights,
    integral_pyramids,
    is_addable,
    is_removable,
    length,
    n_interval,
    n_via_lemma,
    nested_decomposition,
    partition_to_pyramid,
    partitions,
    phi,
    pyramid_to_partition,
    regrid,
    remove_interval,
    scale,
    transpose,
    validate,
)
from pyramid_fock.stepfun import LineInterval, StepFunction

F = Fraction
BASE = "-1:1:-7/10:2:2:1:5/2"
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def L(a, b) -> LineInterval:
    return LineInterval(F(a), F(b))


def axioms_by_sampling(f: StepFunction) -> bool:
    """Pyramid axioms checked on sample points: breakpoints, midpoints, 0 and both ends."""
    pts = sorted(set(f.breakpoints) | {F(0)})
    samples = sorted(set(pts) | {(a + b) / 2 for a, b in zip(pts, pts[1:])} | {pts[0] - 1, pts[-1] + 1})
    vals = {x: f(x) for x in samples}
    if min(vals.values()) < 0 or vals[F(0)] != max(vals.values()):
        return False
    for x, y in zip(samples, samples[1:]):
        step = vals[y] - vals[x]
        if abs(step) > 1:
            return False
        if y <= 0 and step < 0:
            return False
        if x >= 0 and step > 0:
            return False
    return True


def ints(*xs):
    return tuple(F(x) for x in xs)


# -- validation ---------------------------------------------------------------------


def test_zero_is_empty_pyramid():
    assert validate(StepFunction.zero()) == EMPTY
    assert EMPTY.is_zero() and EMPTY.size() == 0


def test_rational_examples_validate():
    assert Pyramid.from_text(RATIONAL).values == (1, 2, 3, 2, 1)
    assert Pyramid.from_text(BASE).values == (1, 2, 1)


@pytest.mark.parametrize(
    "text, error",
    [
        ("-1:1:-7/10:2:5/2", JumpTooLarge),
        ("0:-1:1", NotNonneg),
        ("1:1:2", MaxNotAtZero),
        ("-2:2:-1:1:0:2:1", NotUnimodal),
        ("0:2:1", JumpTooLarge),
    ],
)
def test_validation_diagnostics(text, error):
    with pytest.raises(error):
        Pyramid.from_text(text)


@given(step_functions(max_terms=4))
def test_validation_agrees_with_sampling(f):
    try:
        validate(f)
        ok = True
    except PyramidError:
        ok = False
    assert ok == axioms_by_sampling(f)


@given(pyramids())
def test_generated_pyramids_round_trip(p):
    assert Pyramid.from_text(p.to_text()) == p
    assert Pyramid.from_json(p.to_json()) == p


# -- discontinuities, addability -------------------------------------------------------


def test_discontinuities():
    assert discontinuities(EMPTY) == ()
    assert discontinuities(Pyramid.from_text("0:1:1")) == ints(0, 1)
    assert discontinuities(Pyramid.from_text(STAIRCASE)) == ints(-5, -2, -1, 2, 3, 5)


def test_adding_to_the_rational_base():
    p = Pyramid.from_text(BASE)
    assert add_interval(p, L(F(-11, 5), F(2, 5))) == Pyramid.from_text(RATIONAL)
    assert add_interval(p, L(F(-11, 5), F(5, 2))) is None
    assert add_interval(p, L(F(-11, 5), 0)) is None


def test_n_examples():
    unit = Pyramid.from_text("0:1:1")
    assert n_interval(EMPTY, L(0, 1)) == 1
    assert n_interval(unit, L(0, 1)) == -1
    assert n_interval(unit, L(3, 4)) == 0
    assert n_via_lemma(EMPTY, L(0, 1)) == 1
    assert n_via_lemma(unit, L(F(1, 4), F(1, 2))) == 0
    assert n_via_lemma(unit, L(0, 1)) == -1


def case_table(p: Pyramid, J: LineInterval, kind: str) -> bool:
    """Endpoint conditions for p +- 1_J to be a pyramid.

    The case split is on the position of J relative to 0; an interval ending
    exactly at 0 falls in the branch of intervals left of 0.  In the two
    one-sided branches the other endpoint must avoid the discontinuities.
    """
    D = set(p.breakpoints)
    a, b = J.a, J.b
    if kind == "add":
        if 0 < a:
            return a in D and b not in D
        if a <= 0 < b:
            return a not in D and b not in D
        return b in D and a not in D
    if 0 < a:
        return b in D and a not in D
    if a <= 0 < b:
        return a in D and b in D
    return a in D and b not in D


@given(pyramids(max_height=4), st.data())
def test_addability_case_table(p, data):
    pts = sorted(set(p.breakpoints) | {F(0), F(-1, 2), F(1, 3), F(2), F(-3)})
    a, b = sorted(data.draw(st.lists(st.sampled_from(pts), min_size=2, max_size=2, unique=True)))
    J = L(a, b)
    assert is_addable(p, J) == case_table(p, J, "add")
    assert is_removable(p, J) == case_table(p, J, "remove")


def test_interval_ending_at_zero():
    unit = Pyramid.from_text("0:1:1")
    J = L(F(-1, 2), 0)
    assert is_addable(unit, J) and not is_addable(EMPTY, J)


@given(pyramids(max_height=4), line_intervals())
def test_add_and_remove_exclusive(p, J):
    assert not (is_addable(p, J) and is_removable(p, J))
    assert n_interval(p, J) == n_via_lemma(p, J)


@given(pyramids(max_height=4), line_intervals())
def test_size_changes_by_length(p, J):
    q = add_interval(p, J)
    if q is not None:
        assert q.size() == p.size() + J.length
        assert remove_interval(q, J) == p
    r = remove_interval(p, J)
    if r is not None:
        assert r.size() == p.size() - J.length


# -- heights --------------------------------------------------------------------------


def test_heights():
    p = Pyramid.from_text(BASE)
    # the addable interval of the figure: all variation sits left of 0
    assert heights(p, L(F(-11, 5), F(2, 5))) == (2, 2, 0)
    # the wide interval also sees the drop from 2 to 1 at x = 2
    assert heights(p, L(F(-11, 5), F(5, 2))) == (2, 2, 1)
    assert heights(EMPTY, L(-3, 7)) == (0, 0, 0)
    assert heights(p, L(F(-7, 10), 2)) == (0, 0, 0)


@given(pyramids(max_height=4), line_intervals(N=4))
def test_heights_by_sampling(p, J):
    xs = [J.a + (J.b - J.a) * F(k, 96) for k in range(96)] + [x for x in p.breakpoints if x in J]

    def spread(sel):
        vals = [p(x) for x in xs if sel(x)]
        return max(vals) - min(vals) if vals else 0
    assert heights(p, J) == (spread(lambda x: True), spread(lambda x: x < 0), spread(lambda x: x >= 0))


# -- partitions -----------------------------------------------------------------------


def test_staircase_example():
    p = partition_to_pyramid(Partition((5, 4, 4, 3, 1, 1)))
    assert [p(x) for x in range(-5, 5)] == [1, 1, 1, 2, 3, 3, 3, 2, 1, 1]
    assert p == Pyramid.from_text(STAIRCASE)
    assert p.size() == 18
    assert partition_to_pyramid(Partition(())) == EMPTY


def sympy_partition_list(n):
    out = []
    for d in sympy_partitions(n):
        parts = sorted((k for k, m in d.items() for _ in range(m)), reverse=True)
        out.append(Partition(tuple(parts)) if n else Partition(()))
    return out


@pytest.mark.parametrize("n", range(13))
def test_bijection_counts_and_round_trip(n):
    lams = sympy_partition_list(n)
    assert len(lams) == PARTITION_NUMBERS[n]
    assert sorted(lams) == sorted(partitions(n))
    pyrs = integral_pyramids(n)
    assert len(pyrs) == PARTITION_NUMBERS[n]
    assert sorted(partition_to_pyramid(lam) for lam in lams) == sorted(pyrs)
    for lam in lams:
        p = partition_to_pyramid(lam)
        assert p.size() == n
        assert pyramid_to_partition(p) == lam


def test_non_integral_rejected():
    with pytest.raises(NotIntegral):
        pyramid_to_partition(Pyramid.from_text(RATIONAL))


def test_grid_pyramids_by_brute_force():
    # every profile of cell values on a short window, filtered by the axioms
    N, total = 2, F(2)
    cells = 8
    found = set()
    for vals in product(range(3), repeat=cells):
        f = StepFunction(tuple(F(k - cells // 2, N) for k in range(cells + 1)), vals)
        if f.integral() == total and axioms_by_sampling(f):
            found.add(Pyramid(f))
    assert found == set(grid_pyramids(N, total))


# -- transpose, length ---------------------------------------------------------------


def test_transpose():
    assert transpose(EMPTY) == EMPTY
    lam = Partition((5, 4, 4, 3, 1, 1))
    assert transpose(partition_to_pyramid(lam)) == partition_to_pyramid(Partition((6, 4, 4, 3, 1)))
    assert lam.conjugate() == Partition((6, 4, 4, 3, 1))


@pytest.mark.parametrize("n", range(9))
def test_transpose_is_conjugation(n):
    for lam in partitions(n):
        p = partition_to_pyramid(lam)
        assert transpose(p) == partition_to_pyramid(lam.conjugate())
        assert transpose(transpose(p)) == p
        assert length(p) == len(lam)


@given(pyramids(max_height=4))
def test_transpose_involution_where_defined(p):
    try:
        t = transpose(p)
    except PyramidError:
        return
    assert transpose(t) == p and t.size() == p.size()


# -- dominance ------------------------------------------------------------------------


def phi_by_midpoints(p: Pyramid, n: Fraction, K: int) -> Fraction:
    """Midpoint rule on the grid (1/K)Z; exact when every kink lies on that grid."""
    lo = min(p.breakpoints[0], -n) - 1
    hi = p.breakpoints[-1] + 1
    total = F(0)
    x = lo
    h = F(1, K)
    while x < hi:
        m = x + h / 2
        ramp = F(0) if m <= -n else (n + m if m < 0 else n)
        total += min(F(p(m)), ramp) * h
        x += h
    return total


def test_dominance_examples():
    two, one_one = partition_to_pyramid(Partition((2,))), partition_to_pyramid(Partition((1, 1)))
    assert dominance_leq(one_one, two) and not dominance_leq(two, one_one)
    three, ones = partition_to_pyramid(Partition((3,))), partition_to_pyramid(Partition((1, 1, 1)))
    assert dominance_leq(ones, three) and not dominance_leq(three, ones)
    p = Pyramid.from_text(RATIONAL)
    assert dominance_leq(p, p)
    with pytest.raises(SizeMismatch):
        dominance_leq(two, three)


@pytest.mark.parametrize("n", range(11))
def test_dominance_matches_partitions(n):
    lams = list(partitions(n))
    pyr = {lam: partition_to_pyramid(lam) for lam in lams}
    for mu in lams:
        for lam in lams:
            assert dominance_leq(pyr[mu], pyr[lam]) == classical_dominance_leq(mu, lam)


@given(pyramids(N=2, max_height=3), st.data())
def test_phi_against_midpoint_rule(p, data):
    assume(not p.is_zero())
    n = F(data.draw(st.integers(0, 16)), 4)
    assert phi(p, n) == phi_by_midpoints(p, n, 4)


@given(st.integers(2, 6), st.data())
def test_dominance_against_sampled_phi(cells, data):
    N = 2
    pool = grid_pyramids(N, F(cells, N))
    q, p = data.draw(st.sampled_from(pool)), data.draw(st.sampled_from(pool))
    grid = [F(k, 2 * N) for k in range(0, 8 * N * 4)]
    sampled = all(phi(p, n) >= phi(q, n) for n in grid)
    verdict = dominance_leq(q, p)
    if verdict:
        assert sampled
    if not sampled:
        assert not verdict


# -- decomposition and regridding -------------------------------------------------------


def test_nested_decomposition_examples():
    assert nested_decomposition(EMPTY) == []
    assert nested_decomposition(Pyramid.from_text("0:1:1")) == [L(0, 1)]
    assert nested_decomposition(Pyramid.from_text(RATIONAL)) == [
        L(F(-11, 5), F(5, 2)),
        L(-1, 2),
        L(F(-7, 10), F(2, 5)),
    ]


@given(pyramids(max_height=5))
def test_nested_decomposition_sums_back(p):
    Is = nested_decomposition(p)
    assert StepFunction.from_intervals((J, 1) for J in Is) == p.f
    for outer, inner in zip(Is, Is[1:]):
        assert outer.a < inner.a and inner.b < outer.b


def test_regrid_examples():
    unit = partition_to_pyramid(Partition((1,)))
    assert regrid(unit, [(0, 0), (1, F(1, 2))]) == Pyramid.from_text("0:1:1/2")
    p = Pyramid.from_text(RATIONAL)
    assert regrid(p, [(-1, -1), (0, 0), (1, 1)]) == p
    with pytest.raises(NotMonotone):
        regrid(p, [(0, 0), (1, -1)])
    with pytest.raises(ZeroNotFixed):
        regrid(p, [(0, 1), (1, 2)])


@given(pyramids(max_height=4), st.fractions(F(1, 3), 3, max_denominator=5), st.fractions(F(1, 3), 3, max_denominator=5))
def test_regrid_inverse(p, s_neg, s_pos):
    table = [(-1, -s_neg), (0, 0), (1, s_pos)]
    back = [(-s_neg, -1), (0, 0), (s_pos, 1)]
    q = regrid(p, table)
    assert regrid(q, back) == p
    assert q.values == p.values


@given(pyramids(max_height=4), st.fractions(F(1, 4), 4, max_denominator=4))
def test_scaling_scales_size(p, c):
    assert scale(p, c).size() == c * p.size()
