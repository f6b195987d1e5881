import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ybe._scan import ScanPolicy
from ybe.brace import check_condition, is_two_sided, mpl_brace, validate_brace
from ybe.errors import MalformedTableError, RefusedError
from ybe.rings import (
    ConfluenceError,
    RewriteSystem,
    VectorRing,
    builtin_thm6,
    builtin_thm8,
    check_action_shapes,
    check_confluence,
    check_lri_graded,
    check_raut_graded,
    circle,
    circle_inverse,
    find_literal_lri_counterexample,
    find_raut_instance,
    graded_component,
    mpl_graded,
    p3_fixture,
    reversal_systems,
    ring_actions,
    to_finite_brace,
    zero_ring,
)
from ybe.suite import ring_corpus

THM6 = builtin_thm6()
THM8 = builtin_thm8()
FAST = ScanPolicy(samples=2000)


def _rank_mod_p(rows, p):
    M = np.array(rows, dtype=np.int64) % p
    if M.size == 0:
        return 0
    rank = 0
    for col in range(M.shape[1]):
        piv = next((r for r in range(rank, len(M)) if M[r, col]), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = M[rank] * pow(int(M[rank, col]), -1, p) % p
        for r in range(len(M)):
            if r != rank and M[r, col]:
                M[r] = (M[r] - M[r, col] * M[rank]) % p
        rank += 1
    return rank


def _quotient_dims(sys):
    """dim of F<gens>_d / I_d for d = 1..max_deg, by linear algebra on the free algebra."""
    k = len(sys.gens)
    dims = []
    for d in range(1, sys.max_deg + 1):
        words = list(itertools.product(range(k), repeat=d))
        index = {w: i for i, w in enumerate(words)}
        rows = []
        for rule in sys.rules:
            n = len(rule.lhs)
            if n > d:
                continue
            for split in range(d - n + 1):
                for u in itertools.product(range(k), repeat=split):
                    for v in itertools.product(range(k), repeat=d - n - split):
                        row = [0] * len(words)
                        row[index[u + rule.lhs + v]] += 1
                        for w, c in rule.rhs.items():
                            row[index[u + w + v]] -= c
                        rows.append(row)
        dims.append(len(words) - _rank_mod_p(rows, sys.p))
    return dims


RINGS = [THM6, THM8, p3_fixture(), zero_ring()] + list(ring_corpus())[1:12]


@pytest.mark.parametrize("sys", RINGS, ids=lambda s: s.name)
def test_basis_matches_linear_algebra(sys):
    got = [len(graded_component(sys, d)) for d in range(1, sys.max_deg + 1)]
    assert got == _quotient_dims(sys)


def test_thm6_basis_and_order():
    words = [THM6.word_str(w) for w in THM6.basis]
    assert sorted(words) == sorted(["x", "y", "xx", "xy", "yx", "yy", "yyy", "yyx", "yxy", "yxx", "xyx", "xxx"])
    assert words[6] == "xxx"  # largest first within a degree
    assert THM6.ring_order() == 4096
    assert check_confluence(THM6).passed


def test_thm8_basis():
    assert THM8.dim == 14


def test_normal_forms():
    assert THM6.normal_form("x*x*y") == THM6.element("y*x*x")
    assert THM6.normal_form("x*y*y + y*y*x").coeffs == {}
    assert not THM6.normal_form("x*x*x*x")
    assert THM6.normal_form("x*y*x")


def test_circle_inverse_example():
    x = THM6.element("x")
    assert circle_inverse(x) == THM6.element("x + x*x + x*x*x")
    assert not circle(x, circle_inverse(x))


def test_ring_actions_example():
    x, y = THM6.element("x"), THM6.element("y")
    left, right = ring_actions(x, y)
    assert left == THM6.element("x*y + y")
    assert circle(left, right) == circle(x, y)


@settings(max_examples=60)
@given(st.data())
def test_action_shapes_and_adjoint_group(data):
    sys = data.draw(st.sampled_from([THM6, THM8, p3_fixture()]))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    vr = VectorRing(sys)
    A, B, C = (vr.random(rng, 1) for _ in range(3))
    a, b, c = (sys.from_vector(v[0]) for v in (A, B, C))
    # associativity, distributivity and the adjoint group
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c
    assert circle(circle(a, b), c) == circle(a, circle(b, c))
    assert not circle(a, circle_inverse(a))
    assert check_action_shapes(a, b)
    assert np.array_equal(vr.star(A, B)[0], sys.to_vector(a * b))
    left, right = ring_actions(a, b)
    assert np.array_equal(vr.right(A, B)[0], sys.to_vector(right))


@settings(max_examples=40)
@given(st.lists(st.sampled_from("xy"), min_size=1, max_size=5), st.lists(st.sampled_from("xy"), min_size=1, max_size=5))
def test_normal_form_is_multiplicative(u, v):
    a, b = THM6.normal_form("*".join(u)), THM6.normal_form("*".join(v))
    assert a * b == THM6.normal_form("*".join(u + v))


def test_grading_and_nilpotency():
    for sys in (THM6, THM8, p3_fixture()):
        T = sys.structure_constants
        deg = np.array([len(w) for w in sys.basis])
        u, v, k = np.nonzero(T)
        assert (deg[k] == deg[u] + deg[v]).all()
        # products of max_deg + 1 elements vanish
        vr = VectorRing(sys)
        P = vr.random(np.random.default_rng(0), 8)
        for _ in range(sys.max_deg):
            P = vr.star(P, vr.random(np.random.default_rng(1), 8))
        assert not P.any()


def test_confluence_failure_detected():
    with pytest.raises(ConfluenceError):
        RewriteSystem(2, ["x", "y"], [("xy", {"yy": 1}), ("xx", {})], 3)


def test_bad_prime():
    with pytest.raises(MalformedTableError):
        RewriteSystem(4, ["x"], [], 2)


def test_thm6_criteria():
    raut = check_raut_graded(THM6, FAST)
    lri = check_lri_graded(THM6, FAST)
    assert raut.passed
    assert lri.failed
    assert lri.part("lri_basis_criterion").witnesses[0][:3] == ("x", "y", "x")
    assert lri.part("lri_literal_counterexample").witnesses
    assert mpl_graded(THM6) == 3


def test_thm8_criteria():
    raut = check_raut_graded(THM8, FAST)
    assert raut.failed
    assert raut.part("raut_literal_counterexample").witnesses
    assert raut.part("raut_basis_criterion").witnesses[0] == ("x", "x", "y")
    assert mpl_graded(THM8) == 3


def test_literal_lri_counterexample_is_genuine():
    a, c = find_literal_lri_counterexample(THM6, FAST)
    vr = VectorRing(THM6)
    A, C = a[None], c[None]
    # (^a c)^a = c  and  ^a (c^a) = c  cannot both hold
    ok1 = np.array_equal(vr.right(vr.left(A, C), A), C)
    ok2 = np.array_equal(vr.left(A, vr.right(C, A)), C)
    assert not (ok1 and ok2)


def test_thm6_brace():
    b = to_finite_brace(THM6)
    assert b.m == 4096 and is_two_sided(b)
    assert validate_brace(b).passed
    assert mpl_brace(b) == 3


def test_to_brace_refused_above_cap():
    with pytest.raises(RefusedError):
        to_finite_brace(THM8)


@pytest.mark.parametrize("sys", [s for s in ring_corpus() if s.ring_order() <= 512], ids=lambda s: s.name)
def test_graded_lri_matches_brace_scan(sys):
    b = to_finite_brace(sys)
    assert check_lri_graded(sys, FAST).passed == check_condition(b, "lri").passed


@pytest.mark.parametrize("sys", [s for s in ring_corpus() if s.ring_order() <= 256], ids=lambda s: s.name)
def test_graded_raut_matches_brace_scan(sys):
    b = to_finite_brace(sys)
    assert check_raut_graded(sys, FAST).passed == check_condition(b, "raut").passed


def test_p3_raut_iff_lri():
    for _, sys in reversal_systems(3):
        raut = check_raut_graded(sys, ScanPolicy(samples=200)).part("raut_basis_criterion").passed
        lri = check_lri_graded(sys, ScanPolicy(samples=200)).part("lri_basis_criterion").passed
        assert raut == lri, sys.name


def test_p3_fixture_is_found_instance():
    found = find_raut_instance(3)
    assert [found.word_str(w) for w in found.basis] == [p3_fixture().word_str(w) for w in p3_fixture().basis]
    assert check_raut_graded(p3_fixture(), FAST).passed
    assert check_lri_graded(p3_fixture(), FAST).passed
    assert graded_component(p3_fixture(), 3)


def test_json_round_trip():
    d = THM6.to_json()
    back = RewriteSystem.from_json(d)
    assert [back.word_str(w) for w in back.basis] == [THM6.word_str(w) for w in THM6.basis]


def _generator_sandwich_zero(sys):
    vr = VectorRing(sys)
    E = np.eye(sys.dim, dtype=np.int64)
    gens = [sys.basis_index[(g,)] for g in range(len(sys.gens)) if (g,) in sys.basis_index]
    for x in gens:
        X = E[x][None]
        if vr.star(X, X).any() or vr.star(vr.star(np.repeat(X, sys.dim, 0), E), np.repeat(X, sys.dim, 0)).any():
            return False
    return True


def test_generator_sandwich_bounds_mpl():
    # x*u*x = 0 for generators x and every u, read together with x*x = 0
    hits = [s for s in ring_corpus() if s.dim and _generator_sandwich_zero(s)]
    assert hits
    for s in hits:
        assert mpl_graded(s) <= len(s.gens), s.name
        if s.ring_order() <= 512:
            assert mpl_brace(to_finite_brace(s)) <= len(s.gens)


def _sandwich_ring():
    # x, y, z with every word that repeats a letter sent to 0
    def minimal(w):
        return w[0] == w[-1] and w[0] not in w[1:-1] and len(set(w[1:-1])) == len(w) - 2
    rules = [(w, {}) for d in (2, 3, 4) for w in itertools.product(range(3), repeat=d) if minimal(w)]
    return RewriteSystem(2, ["x", "y", "z"], rules, 3, name="sandwich")


def test_sandwich_bound_is_tight_on_three_generators():
    s = _sandwich_ring()
    assert s.dim == 15 and _generator_sandwich_zero(s)
    assert mpl_graded(s) == len(s.gens)
