"""Seeded generators and the relation suites used as acceptance evidence.

A random suite is a pair (generate, check): ``generate`` draws an instance
(a pyramid plus some intervals) from a per-trial RNG and ``check`` returns
the list of relations that fail on it, each with both sides.  Failing
instances are shrunk by dropping levels of the pyramid while the same
relation keeps failing.  Exhaustive suites enumerate their cases instead.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable

from . import classical as cl
from .coeff import LaurentCoeff, quantum_integer
from .fock_circle import (
    apply_E_circle,
    apply_F_circle,
    apply_K_circle,
    apply_K_circle_power,
    circle_euler,
    circle_form,
    enumerate_E_tuples,
    enumerate_F_tuples,
    expand_r_E,
    expand_r_F,
    individual_tuples,
    k_circle_exponent,
)
from .fock_line import FockVector, apply_E_line, apply_F_line, apply_K_line, k_exponent
from .linalg import generic_rank, kernel, mat_vec, bareiss_rank
from .pyramid import (
    EMPTY,
    Partition,
    Pyramid,
    classical_dominance_leq,
    dominance_leq,
    from_intervals,
    grid_pyramids,
    integral_pyramids,
    n_fast,
    n_interval,
    n_via_lemma,
    nested_decomposition,
    partition_to_pyramid,
    partitions,
    pyramid_to_partition,
)
from .stepfun import CircleInterval, LineInterval, euler_form_line, format_rational, project_to_circle, sym_form_line

ONE = LaurentCoeff.one()
PARTITION_COUNTS = (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77)


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class RandomSpec:
    seed: int = 0
    max_denominator: int = 6
    max_height: int = 4
    max_support: Fraction = Fraction(3)
    trials: int = 100

    def __post_init__(self):
        object.__setattr__(self, "max_support", Fraction(self.max_support))
        if self.max_denominator < 1 or self.max_support <= 0 or self.trials < 0:
            raise ValueError("RandomSpec bounds must be positive")
        # max_height = 0 is allowed and yields the zero pyramid
        if self.max_height < 0:
            raise ValueError("max_height must be >= 0")

    def rng(self, suite: str = "", trial: int = 0) -> random.Random:
        # string seeds hash through sha512, so streams are stable across runs
        return random.Random(f"{self.seed}:{suite}:{trial}")


# ---------------------------------------------------------------------------
# generators


def _grid(lo: Fraction, hi: Fraction, N: int) -> list[Fraction]:
    return [Fraction(k, N) for k in range(math.ceil(lo * N), math.floor(hi * N) + 1)]


def gen_grid(rng: random.Random, spec: RandomSpec) -> int:
    return rng.randint(1, spec.max_denominator)


def gen_pyramid(rng: random.Random, spec: RandomSpec, N: int | None = None) -> Pyramid:
    """Sum of h nested grid intervals with distinct endpoints; unit jumps by construction."""
    if N is None:
        N = gen_grid(rng, spec)
    S = spec.max_support
    lefts = _grid(-S, Fraction(0), N)
    rights = [x for x in _grid(Fraction(0), S, N) if x > 0]
    h = rng.randint(0, spec.max_height)
    h = min(h, len(lefts), len(rights))
    if h == 0:
        return EMPTY
    a = sorted(rng.sample(lefts, h))
    b = sorted(rng.sample(rights, h), reverse=True)
    return from_intervals([LineInterval(x, y) for x, y in zip(a, b)])


def _special(p: Pyramid | None) -> list[Fraction]:
    pts = {Fraction(0)}
    if p is not None:
        pts |= set(p.breakpoints)
    return sorted(pts)


def _pick_points(rng, spec, N, p, k) -> list[Fraction]:
    """k distinct sorted grid points, half of the draws biased towards D(p) and 0."""
    S = spec.max_support + 1
    grid = _grid(-S, S, N)
    special = [x for x in _special(p) if (x * N).denominator == 1] or grid
    chosen: set = set()
    while len(chosen) < k:
        pool = special if rng.random() < 0.5 else grid
        chosen.add(rng.choice(pool))
        if len(special) + len(grid) < k:  # pragma: no cover - grids are large
            raise ValueError("grid too small")
    return sorted(chosen)


def gen_interval(rng: random.Random, spec: RandomSpec, p: Pyramid | None = None, N: int | None = None) -> LineInterval:
    if N is None:
        N = gen_grid(rng, spec)
    a, b = _pick_points(rng, spec, N, p, 2)
    return LineInterval(a, b)


def _circle_grid(N: int) -> int:
    return N if N >= 2 else 2


def _circle_start(rng, p, M) -> Fraction:
    special = sorted({x % 1 for x in _special(p) if (x * M).denominator == 1})
    if special and rng.random() < 0.6:
        return rng.choice(special)
    return Fraction(rng.randrange(M), M)


def gen_circle_interval(
    rng: random.Random, spec: RandomSpec, p: Pyramid | None = None, N: int | None = None
) -> CircleInterval:
    """A strict circle interval with endpoints on the (1/M)Z grid, M >= 2."""
    if N is None:
        N = gen_grid(rng, spec)
    M = _circle_grid(N)
    return CircleInterval(_circle_start(rng, p, M), Fraction(rng.randint(1, M - 1), M))


# ---------------------------------------------------------------------------
# reports


@dataclass
class Failure:
    trial: int
    relation: str
    instance: dict
    lhs: Any = None
    rhs: Any = None

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "relation": self.relation,
            "instance": _jsonable(self.instance),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
        }


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    failures: list = field(default_factory=list)
    elapsed_ms: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "failures": [f.to_json() for f in self.failures],
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.notes:
            out["notes"] = _jsonable(self.notes)
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.trials} trials, {len(self.failures)} failures"


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (Pyramid, LineInterval, CircleInterval, LaurentCoeff, FockVector, Partition)):
        return x.to_json() if not isinstance(x, Partition) else x.to_text()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


# ---------------------------------------------------------------------------
# relation helpers


class _Checker:
    """Collects (name, lhs, rhs) for relations whose two sides differ."""

    def __init__(self):
        self.bad: list[tuple[str, Any, Any]] = []

    def eq(self, name: str, lhs, rhs):
        if lhs != rhs:
            self.bad.append((name, lhs, rhs))

    def zero(self, name: str, x):
        if x:
            self.bad.append((name, x, FockVector()))


def _vp(k) -> LaurentCoeff:
    return LaurentCoeff.v_power(k)


def _half(k) -> LaurentCoeff:
    # v^{k/2}
    return LaurentCoeff.monomial(k)


def _ef_rhs(w: FockVector, kexp: Callable[[Pyramid], int]) -> FockVector:
    return FockVector({p: c * quantum_integer(kexp(p)) for p, c in w.items()})


def _serre(A, B, w):
    """A B^2 - [2] B A B + B^2 A applied to w."""
    two = quantum_integer(2)
    return A(B(B(w))) - B(A(B(w))).scale(two) + B(B(A(w)))


# -- line -----------------------------------------------------------------


def _gen_line(rng, spec):
    N = gen_grid(rng, spec)
    p = gen_pyramid(rng, spec, N)
    a, b = _pick_points(rng, spec, N, p, 2)
    c, d = _pick_points(rng, spec, N, p, 2)
    x, y, z = _pick_points(rng, spec, N, p, 3)
    q = _pick_points(rng, spec, N, p, 4)
    r = _pick_points(rng, spec, N, p, 4)
    # nested pair: inner shares or avoids endpoints at random
    lo, hi = r[0], r[3]
    ilo = rng.choice([lo, r[1]])
    ihi = rng.choice([hi, r[2]])
    return {
        "pyramid": p,
        "J1": LineInterval(a, b),
        "J2": LineInterval(c, d),
        "adj": (LineInterval(x, y), LineInterval(y, z)),
        "apart": (LineInterval(q[0], q[1]), LineInterval(q[2], q[3])),
        "nest": (LineInterval(ilo, ihi), LineInterval(lo, hi)),
    }


def _E(J):
    return lambda w: apply_E_line(J, w)


def _F(J):
    return lambda w: apply_F_line(J, w)


def _K(J, k=1):
    f = J.indicator().scale(k)
    return lambda w: apply_K_line(f, w)


def _check_line(inst) -> list:
    p = inst["pyramid"]
    w = FockVector.basis(p)
    J1, J2 = inst["J1"], inst["J2"]
    A, B = inst["adj"]
    C, D = inst["apart"]
    I, O = inst["nest"]
    ck = _Checker()
    pairs = [(J1, J2), (J2, J1), (J1, J1), (A, B), (B, A), (I, O), (O, I)]
    for X, Y in pairs:
        ck.eq(f"K{X}K{Y}", _K(X)(_K(Y)(w)), _K(Y)(_K(X)(w)))
        form = sym_form_line(X.indicator(), Y.indicator())
        ck.eq(f"K{X} E{Y} K{X}^-1", _K(X)(_E(Y)(_K(X, -1)(w))), _E(Y)(w).scale(_vp(form)))
        ck.eq(f"K{X} F{Y} K{X}^-1", _K(X)(_F(Y)(_K(X, -1)(w))), _F(Y)(w).scale(_vp(-form)))
    for X, Y in [(J1, J2), (J2, J1), (A, B), (B, A), (C, D), (D, C)]:
        if X.b <= Y.a or Y.b <= X.a:
            ck.eq(f"[F{X},E{Y}]", _F(X)(_E(Y)(w)), _E(Y)(_F(X)(w)))
    for X in (J1, J2, A, B, I, O):
        ck.eq(f"[E{X},F{X}]", _E(X)(_F(X)(w)) - _F(X)(_E(X)(w)), _ef_rhs(w, lambda q, X=X: n_interval(q, X)))
    U = LineInterval(A.a, B.b)
    ck.eq("K join", _K(A)(_K(B)(w)), _K(U)(w))
    ck.eq("E join", _E(U)(w), _E(A)(_E(B)(w)).scale(_half(1)) - _E(B)(_E(A)(w)).scale(_half(-1)))
    ck.eq("F join", _F(U)(w), _F(B)(_F(A)(w)).scale(_half(-1)) - _F(A)(_F(B)(w)).scale(_half(1)))
    ck.eq("[E,E] apart", _E(C)(_E(D)(w)), _E(D)(_E(C)(w)))
    ck.eq("[F,F] apart", _F(C)(_F(D)(w)), _F(D)(_F(C)(w)))
    e_io = euler_form_line(I.indicator(), O.indicator())
    e_oi = euler_form_line(O.indicator(), I.indicator())
    ck.eq("E nest", _E(I)(_E(O)(w)).scale(_vp(e_io)), _E(O)(_E(I)(w)).scale(_vp(e_oi)))
    ck.eq("F nest", _F(I)(_F(O)(w)).scale(_vp(e_io)), _F(O)(_F(I)(w)).scale(_vp(e_oi)))
    return ck.bad


# -- serre -----------------------------------------------------------------


def _gen_serre(rng, spec):
    N = gen_grid(rng, spec)
    p = gen_pyramid(rng, spec, N)
    x, y, z = _pick_points(rng, spec, N, p, 3)
    return {"pyramid": p, "adj": (LineInterval(x, y), LineInterval(y, z))}


def _check_serre(inst) -> list:
    w = FockVector.basis(inst["pyramid"])
    A, B = inst["adj"]
    ck = _Checker()
    ck.zero("serre E(J1,J2)", _serre(_E(A), _E(B), w))
    ck.zero("serre E(J2,J1)", _serre(_E(B), _E(A), w))
    ck.zero("serre F(J1,J2)", _serre(_F(A), _F(B), w))
    ck.zero("serre F(J2,J1)", _serre(_F(B), _F(A), w))
    return ck.bad


# -- n_J through the symmetric form -----------------------------------------------


def _gen_lemma(rng, spec):
    N = gen_grid(rng, spec)
    p = gen_pyramid(rng, spec, N)
    return {"pyramid": p, "J": gen_interval(rng, spec, p, N)}


def _check_lemma(inst) -> list:
    p, J = inst["pyramid"], inst["J"]
    ck = _Checker()
    n = n_interval(p, J)
    ck.eq("n_J = delta - (1_J, p)", n, n_via_lemma(p, J))
    ck.eq("n_J one-sided", n, n_fast(p, J.a, J.b))
    ck.eq("K exponent", n, k_exponent(J.indicator(), p))
    return ck.bad


# -- circle --------------------------------------------------------------------


def _cE(J):
    return lambda w: apply_E_circle(J, w)


def _cF(J):
    return lambda w: apply_F_circle(J, w)


def _cK(J, k=1):
    return lambda w: apply_K_circle_power(J, k, w)


def _gen_circle(rng, spec):
    N = gen_grid(rng, spec)
    p = gen_pyramid(rng, spec, N)
    M = _circle_grid(N)

    def arc(start, cells):
        return CircleInterval(start, Fraction(cells, M))

    s = _circle_start(rng, p, M)
    J1 = gen_circle_interval(rng, spec, p, N)
    J2 = gen_circle_interval(rng, spec, p, N)
    # left-adjacent pair, union possibly the full circle
    l1 = rng.randint(1, M - 1)
    l2 = rng.randint(1, M - l1)
    adj = (arc(s, l1), arc(s + Fraction(l1, M), l2))
    # nested pair
    outer = rng.randint(1, M - 1)
    inner = rng.randint(1, outer)
    off = rng.randint(0, outer - inner)
    nest = (arc(s + Fraction(off, M), inner), arc(s, outer))
    # closures apart (needs M >= 4) or merely disjoint
    if M >= 4:
        a = rng.randint(1, M - 3)
        b = rng.randint(1, M - 2 - a)
        gap = rng.randint(1, M - 1 - a - b)
    else:
        a, b, gap = 1, 1, 0
    apart = (arc(s, a), arc(s + Fraction(a + gap, M), b))
    return {"pyramid": p, "J1": J1, "J2": J2, "adj": adj, "nest": nest, "apart": apart}


def _check_circle(inst) -> list:
    p = inst["pyramid"]
    w = FockVector.basis(p)
    J1, J2 = inst["J1"], inst["J2"]
    A, B = inst["adj"]
    I, O = inst["nest"]
    C, D = inst["apart"]
    ck = _Checker()
    full = CircleInterval.full()
    Ks = [J1, J2, A, B, I, full]
    EFs = [J1, J2, A, I]
    for X in Ks:
        for Y in EFs:
            form = circle_form(X, Y)
            ck.eq(f"K{X}K{Y}", _cK(X)(_cK(Y)(w)), _cK(Y)(_cK(X)(w)))
            ck.eq(f"K{X} E{Y} K{X}^-1", _cK(X)(_cE(Y)(_cK(X, -1)(w))), _cE(Y)(w).scale(_vp(form)))
            ck.eq(f"K{X} F{Y} K{X}^-1", _cK(X)(_cF(Y)(_cK(X, -1)(w))), _cF(Y)(w).scale(_vp(-form)))
    for X, Y in [(J1, J2), (J2, J1), (A, B), (B, A), (C, D), (D, C)]:
        if not X.intersects(Y):
            ck.eq(f"[E{X},F{Y}]", _cE(X)(_cF(Y)(w)), _cF(Y)(_cE(X)(w)))
    for X in (J1, J2, A, B, I, O):
        ck.eq(
            f"[E{X},F{X}]",
            _cE(X)(_cF(X)(w)) - _cF(X)(_cE(X)(w)),
            _ef_rhs(w, lambda q, X=X: k_circle_exponent(X, q)),
        )
    U = A.union_with(B)
    ck.eq("K join", _cK(A)(_cK(B)(w)), _cK(U)(w))
    if U.is_strict:
        ck.eq("E join", _cE(U)(w), _cE(A)(_cE(B)(w)).scale(_half(1)) - _cE(B)(_cE(A)(w)).scale(_half(-1)))
        ck.eq("F join", _cF(U)(w), _cF(B)(_cF(A)(w)).scale(_half(-1)) - _cF(A)(_cF(B)(w)).scale(_half(1)))
    if C.closures_disjoint(D):
        ck.eq("[E,E] apart", _cE(C)(_cE(D)(w)), _cE(D)(_cE(C)(w)))
        ck.eq("[F,F] apart", _cF(C)(_cF(D)(w)), _cF(D)(_cF(C)(w)))
    e_io, e_oi = circle_euler(I, O), circle_euler(O, I)
    ck.eq("E nest", _cE(I)(_cE(O)(w)).scale(_vp(e_io)), _cE(O)(_cE(I)(w)).scale(_vp(e_oi)))
    ck.eq("F nest", _cF(I)(_cF(O)(w)).scale(_vp(e_io)), _cF(O)(_cF(I)(w)).scale(_vp(e_oi)))
    return ck.bad


def _gen_folding(rng, spec):
    N = gen_grid(rng, spec)
    p = gen_pyramid(rng, spec, N)
    return {"pyramid": p, "J": gen_circle_interval(rng, spec, p, N)}


def _check_folding(inst) -> list:
    p, J = inst["pyramid"], inst["J"]
    w = FockVector.basis(p)
    ck = _Checker()
    ck.eq("F closed = folding", apply_F_circle(J, w), expand_r_F(J, p))
    ck.eq("E closed = folding", apply_E_circle(J, w), expand_r_E(J, p))
    return ck.bad


def _gen_centrality(rng, spec):
    N = gen_grid(rng, spec)
    p = gen_pyramid(rng, spec, N)
    return {"pyramid": p, "kind": rng.choice("EF"), "J": gen_circle_interval(rng, spec, p, N)}


def _check_centrality(inst) -> list:
    p, J = inst["pyramid"], inst["J"]
    w = FockVector.basis(p)
    full = CircleInterval.full()
    ck = _Checker()
    ck.eq("K_S1 = v", apply_K_circle(full, w), w.scale(_vp(1)))
    G = _cE(J) if inst["kind"] == "E" else _cF(J)
    ck.eq(f"[K_S1, {inst['kind']}{J}]", apply_K_circle(full, G(w)), G(apply_K_circle(full, w)))
    return ck.bad


def _check_tuples(inst) -> list:
    p, J = inst["pyramid"], inst["J"]
    ck = _Checker()
    for kind, enum in (("F", enumerate_F_tuples), ("E", enumerate_E_tuples)):
        succ = {t.lifts for t in enum(J, p)}
        indiv = {t.lifts for t in individual_tuples(J, p, kind)}
        ck.eq(f"{kind} individual = successive", sorted(map(str, indiv)), sorted(map(str, succ)))
    return ck.bad


def _gen_dominance(rng, spec):
    n = rng.randint(0, 10)
    parts = list(partitions(n))
    return {"mu": rng.choice(parts), "lam": rng.choice(parts)}


def _check_dominance(inst) -> list:
    mu, lam = inst["mu"], inst["lam"]
    ck = _Checker()
    ck.eq(
        "pyramid dominance = partial sums",
        dominance_leq(partition_to_pyramid(mu), partition_to_pyramid(lam)),
        classical_dominance_leq(mu, lam),
    )
    return ck.bad


# ---------------------------------------------------------------------------
# exhaustive suites


def table_euler_value(J1: LineInterval, J2: LineInterval) -> list[int]:
    """Every value the case table assigns to <1_J1, 1_J2>; exactly one when the table is exhaustive."""
    a1, b1, a2, b2 = J1.a, J1.b, J2.a, J2.b
    out = []
    if J1 == J2 or (a1 == a2 and b2 < b1) or (a2 < a1 and b1 == b2) or (a2 < a1 < b2 < b1):
        out.append(1)
    if (
        b1 < a2
        or b2 < a1
        or b2 == a1
        or (a1 == a2 and b1 < b2)
        or (a1 < a2 and b1 == b2)
        or (a1 < a2 < b2 < b1)
        or (a2 < a1 < b1 < b2)
    ):
        out.append(0)
    if b1 == a2 or (a1 < a2 < b1 < b2):
        out.append(-1)
    return out


def _symmetric_value(X: LineInterval, Y: LineInterval) -> int:
    """(1_X, 1_Y) read off the case table: 2, -1 for adjacent, 1 for a proper
    nesting with one shared endpoint, 0 otherwise."""
    if X == Y:
        return 2
    if X.b == Y.a or Y.b == X.a:
        return -1
    if (X.a == Y.a) != (X.b == Y.b):
        return 1
    return 0


def _euler_grids() -> list[list[Fraction]]:
    grids = [[Fraction(k) for k in range(m)] for m in range(2, 9)]
    grids.append([Fraction(x) for x in ("-11/5", "-1", "-7/10", "0", "2/5", "2", "5/2", "3")])
    return grids


def _run_euler_table(spec, report):
    n = 0
    for pts in _euler_grids():
        ivs = [LineInterval(a, b) for a in pts for b in pts if a < b]
        for X, Y in product(ivs, ivs):
            n += 1
            vals = table_euler_value(X, Y)
            e = euler_form_line(X.indicator(), Y.indicator())
            if vals != [e]:
                report.failures.append(Failure(n, "euler table", {"J1": X, "J2": Y}, e, vals))
            s = sym_form_line(X.indicator(), Y.indicator())
            want = _symmetric_value(X, Y)
            if s != want:
                report.failures.append(Failure(n, "symmetric form", {"J1": X, "J2": Y}, s, want))
    return n


def _run_bijection(spec, report):
    n = 0
    for k, expected in enumerate(PARTITION_COUNTS):
        n += 1
        pyrs = integral_pyramids(k)
        if len(pyrs) != expected:
            report.failures.append(Failure(n, f"|Pyr({k})|", {"n": k}, len(pyrs), expected))
        images = {partition_to_pyramid(lam) for lam in partitions(k)}
        if images != set(pyrs):
            report.failures.append(Failure(n, f"image of partitions of {k}", {"n": k}))
        for lam in partitions(k):
            n += 1
            back = pyramid_to_partition(partition_to_pyramid(lam))
            if back != lam:
                report.failures.append(Failure(n, "round trip", {"partition": lam}, back, lam))
    lam = Partition((5, 4, 4, 3, 1, 1))
    p = partition_to_pyramid(lam)
    plateau = {x: p(x) for x in range(-5, 5)}
    expected = {-5: 1, -4: 1, -3: 1, -2: 2, -1: 3, 0: 3, 1: 3, 2: 2, 3: 1, 4: 1}
    n += 1
    if plateau != expected or p(5) != 0 or p.left_limit(-5) != 0:
        report.failures.append(Failure(n, "(5,4,4,3,1,1) plateaus", {"partition": lam}, plateau, expected))
    return n


def _run_correspondence(spec, report, max_size: int = 8):
    n = 0
    for lam in cl.all_partitions(max_size):
        p = partition_to_pyramid(lam)
        w = FockVector.basis(p)
        for i in range(-len(lam) - 1, (lam.parts[0] if lam.parts else 0) + 2):
            n += 1
            J = LineInterval(i, i + 1)
            inst = {"partition": lam, "i": i}
            if cl.n_i(lam, i) != n_interval(p, J):
                report.failures.append(Failure(n, "n_i = n_[i,i+1)", inst, cl.n_i(lam, i), n_interval(p, J)))
            for name, disp, op in (("E", cl.hayashi_display_E, apply_E_line), ("F", cl.hayashi_display_F, apply_F_line)):
                got = op(J, w)
                want = FockVector({partition_to_pyramid(mu): c for mu, c in disp(i, lam)})
                if got != want:
                    report.failures.append(Failure(n, f"{name} display", inst, got, want))
            got = apply_K_line(J.indicator(), w)
            want = w.scale(_vp(cl.n_i(lam, i)))
            if got != want:
                report.failures.append(Failure(n, "K display", inst, got, want))
    return n


def _run_classical(spec, report, max_size: int = 8):
    n = 0
    lams = cl.all_partitions(max_size)
    for k in (2, 3, 4):
        for lam in lams:
            n += 1
            bad = cl.check_affine_relations(k, lam)
            if bad:
                report.failures.append(Failure(n, f"affine sl({k})", {"partition": lam}, bad, []))
    for lam in lams:
        n += 1
        bad = cl.check_sl_inf_relations(lam)
        if bad:
            report.failures.append(Failure(n, "sl(inf)", {"partition": lam}, bad, []))
    return n


HW_CASES = ((1, 4), (2, 3), (3, 3))
CYCLIC_CASES = (2, 3)


def _run_hw(spec, report):
    n = 0
    for N, s in HW_CASES:
        res = hw_scan(N, s)
        n += res.pieces
        report.notes[f"N={N},s={s}"] = {"basis": res.basis_size, "kernel": len(res.vectors)}
        if res.vectors != [FockVector.vacuum()]:
            report.failures.append(Failure(n, "only the vacuum", {"N": N, "s": s}, res.vectors, [FockVector.vacuum()]))
    return n


def _run_cyclic(spec, report):
    n = 0
    target = from_intervals([LineInterval(0, 1)])
    for N in CYCLIC_CASES:
        res = cyclic_span(N, target)
        n += 1
        report.notes[f"N={N}"] = {"span_dim": res.span_dim, "monomials": res.monomials, "piece": res.piece_dim}
        if res.in_span:
            report.failures.append(Failure(n, "1_[0,1) outside the span", {"N": N}, True, False))
    return n


# ---------------------------------------------------------------------------
# highest weight vectors and cyclic span


@dataclass
class HWScanResult:
    vectors: list
    basis_size: int
    pieces: int
    interval_denominator: int


def _circle_arcs(M: int) -> list[CircleInterval]:
    return [CircleInterval(Fraction(k, M), Fraction(l, M)) for k in range(M) for l in range(1, M)]


def _operator_matrix(ops, basis: list[Pyramid]):
    """Stack the images of ``basis`` under every op into one Laurent matrix."""
    rows: dict = {}
    for j, p in enumerate(basis):
        w = FockVector.basis(p)
        for k, op in enumerate(ops):
            for q, c in op(w).items():
                rows.setdefault((k, q), [LaurentCoeff.zero()] * len(basis))[j] = c
    return [rows[key] for key in sorted(rows, key=lambda kq: (kq[0], kq[1].sort_key()))]


def hw_scan(N: int, max_size, interval_denominator: int | None = None) -> HWScanResult:
    """Joint kernel of all circle E_J on the span of (1/N)Z-pyramids of size <= max_size.

    The E_J run over strict arcs with endpoints on the (1/M)Z grid, M = 2N by
    default (for N = 1 there are no strict arcs on the integer grid).  E_J
    lowers the size by |J|, so the kernel splits along sizes and each size is
    solved separately.
    """
    if N < 1:
        raise ValueError("grid denominator must be >= 1")
    M = interval_denominator or 2 * N
    ops = [(lambda w, J=J: apply_E_circle(J, w)) for J in _circle_arcs(M)]
    top = math.floor(Fraction(max_size) * N)
    vectors: list = []
    total = 0
    for k in range(top + 1):
        basis = grid_pyramids(N, Fraction(k, N))
        total += len(basis)
        if k == 0:
            vectors.append(FockVector.vacuum())
            continue
        A = _operator_matrix(ops, basis)
        if A and generic_rank(A) == len(basis):
            continue
        for x in kernel(A, len(basis)):
            if any(mat_vec(A, x)):  # pragma: no cover - kernel() is exact
                raise ArithmeticError("kernel vector check failed")
            vectors.append(FockVector({p: c for p, c in zip(basis, x)}))
    return HWScanResult(vectors, total, top + 1, M)


@dataclass
class CyclicSpanResult:
    in_span: bool
    span_dim: int
    monomials: int
    piece_dim: int


def _cells(f, N: int) -> tuple[int, ...]:
    """Circle weight of a (1/N)Z step function as N cell multiplicities."""
    g = project_to_circle(f)
    return tuple(g(Fraction(j, N)) for j in range(N))


def cyclic_span(N: int, target: Pyramid) -> CyclicSpanResult:
    """Is ``target`` in the span of F-monomials (over (1/N)Z arcs) applied to |0>?

    Monomials are the ordered sequences of strict arcs whose circle weights
    add up to the weight of ``target``; the answer compares exact ranks of
    the monomial images with and without the target column.
    """
    if N < 2:
        raise ValueError("need N >= 2 for strict arcs on the grid")
    if not target.on_grid(N):
        raise ValueError(f"target {target} is not on the 1/{N} grid")
    goal = _cells(target.f, N)
    arcs = [(J, _cells(J.lift().indicator(), N)) for J in _circle_arcs(N)]
    images: list[FockVector] = []

    def walk(w: FockVector, remaining: tuple, depth: int):
        if not any(remaining):
            if depth:
                images.append(w)
            return
        for J, wt in arcs:
            if all(a <= r for a, r in zip(wt, remaining)):
                nxt = apply_F_circle(J, w)
                if nxt:
                    walk(nxt, tuple(r - a for r, a in zip(remaining, wt)), depth + 1)

    if any(x < 0 for x in goal):  # pragma: no cover - pyramids are nonnegative
        raise ValueError("negative weight")
    walk(FockVector.vacuum(), goal, 0)
    support = sorted({q for w in images for q in w.support()} | {target}, key=lambda q: q.sort_key())
    M = [[w.coefficient(q) for w in images] for q in support]
    Mt = [row + [LaurentCoeff.one() if q == target else LaurentCoeff.zero()] for row, q in zip(M, support)]
    r = bareiss_rank(M) if images else 0
    rt = bareiss_rank(Mt)
    return CyclicSpanResult(in_span=(rt == r), span_dim=r, monomials=len(images), piece_dim=len(support))


# ---------------------------------------------------------------------------
# registry and runner


@dataclass(frozen=True)
class Suite:
    name: str
    generate: Callable | None = None
    check: Callable | None = None
    exhaustive: Callable | None = None


SUITES = {
    s.name: s
    for s in (
        Suite("line-relations", _gen_line, _check_line),
        Suite("circle-relations", _gen_circle, _check_circle),
        Suite("folding", _gen_folding, _check_folding),
        Suite("lemma-k", _gen_lemma, _check_lemma),
        Suite("serre", _gen_serre, _check_serre),
        Suite("centrality", _gen_centrality, _check_centrality),
        Suite("tuple-semantics", _gen_folding, _check_tuples),
        Suite("dominance", _gen_dominance, _check_dominance),
        Suite("euler-table", exhaustive=_run_euler_table),
        Suite("bijection", exhaustive=_run_bijection),
        Suite("correspondence", exhaustive=_run_correspondence),
        Suite("classical", exhaustive=_run_classical),
        Suite("hw-scan", exhaustive=_run_hw),
        Suite("cyclic-span", exhaustive=_run_cyclic),
    )
}


def suite_names() -> list[str]:
    return sorted(SUITES)


def _get(name: str) -> Suite:
    key = name.replace("_", "-")
    if key not in SUITES:
        raise UnknownSuite(name)
    return SUITES[key]


def _shrink_candidates(inst: dict):
    p = inst.get("pyramid")
    if not isinstance(p, Pyramid) or p.is_zero():
        return
    levels = nested_decomposition(p)
    for k in range(len(levels)):
        rest = levels[:k] + levels[k + 1 :]
        yield {**inst, "pyramid": from_intervals(rest)}


def shrink(check: Callable, inst: dict, relation: str) -> tuple[dict, tuple]:
    """Greedy: keep dropping pyramid levels while ``relation`` still fails."""
    bad = next(b for b in check(inst) if b[0] == relation)
    improved = True
    while improved:
        improved = False
        for cand in _shrink_candidates(inst):
            hit = [b for b in check(cand) if b[0] == relation]
            if hit:
                inst, bad, improved = cand, hit[0], True
                break
    return inst, bad


def _run_trial(name: str, spec: RandomSpec, i: int) -> list[Failure]:
    suite = _get(name)
    inst = suite.generate(spec.rng(suite.name, i), spec)
    out = []
    seen = set()
    for rel, lhs, rhs in suite.check(inst):
        if rel in seen:
            continue
        seen.add(rel)
        small, (_, l2, r2) = shrink(suite.check, inst, rel)
        out.append(Failure(i, rel, small, l2, r2))
    return out


def _run_chunk(args) -> list[Failure]:
    name, spec, idx = args
    out = []
    for i in idx:
        out.extend(_run_trial(name, spec, i))
    return out


def run_suite(name: str, spec: RandomSpec, jobs: int = 1) -> SuiteReport:
    suite = _get(name)
    t0 = time.perf_counter()
    report = SuiteReport(suite.name, 0, spec.seed)
    if suite.exhaustive is not None:
        report.trials = suite.exhaustive(spec, report)
    elif jobs <= 1:
        for i in range(spec.trials):
            report.failures.extend(_run_trial(suite.name, spec, i))
        report.trials = spec.trials
    else:
        chunks = [(suite.name, spec, list(range(k, spec.trials, jobs))) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_chunk, chunks))
        report.failures = sorted((f for r in results for f in r), key=lambda f: (f.trial, f.relation))
        report.trials = spec.trials
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


__all__ = [
    "RandomSpec",
    "SuiteReport",
    "Failure",
    "UnknownSuite",
    "gen_pyramid",
    "gen_interval",
    "gen_circle_interval",
    "run_suite",
    "suite_names",
    "hw_scan",
    "cyclic_span",
    "table_euler_value",
    "shrink",
]
