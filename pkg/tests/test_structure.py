import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ybe.census import solution_census
from ybe.errors import RefusedError
from ybe.solution import is_multipermutation, mpl, permutation_solution, trivial_solution
from ybe.structure import (
    StructureElement,
    actions,
    ball,
    check_ball_condition,
    check_on_ball,
    embed_and_verify,
    generators,
    l1_ball_size,
    permutation_group,
    resolve_perms,
    word_element,
)

CENSUS = solution_census(4)
PERM3 = permutation_solution("(1 2 3)", 3)


def _brute_l1_count(n, L):
    return sum(1 for v in itertools.product(range(-L, L + 1), repeat=n) if sum(map(abs, v)) <= L)


@pytest.mark.parametrize("n,L", [(1, 3), (2, 2), (3, 2), (4, 3)])
def test_l1_ball_size_formula(n, L):
    assert l1_ball_size(n, L) == _brute_l1_count(n, L)


def test_trivial_products():
    g = embed_and_verify(trivial_solution(3))
    p = g[0] * g[1]
    assert p.vec == (1, 1, 0) and p.perm == (0, 1, 2)


@pytest.mark.parametrize("s", CENSUS + [permutation_solution("(1 2)", 2)], ids=lambda s: s.name)
def test_relations_hold(s):
    g = embed_and_verify(s)
    for x, y in itertools.product(range(s.n), repeat=2):
        assert g[x] * g[y] == g[s.lam[x, y]] * g[s.rho[y, x]]


@pytest.mark.parametrize("s", CENSUS, ids=lambda s: s.name)
def test_ball_is_l1_ball(s):
    B = ball(s, 2)
    assert len(B) == l1_ball_size(s.n, 2)
    assert (np.abs(B.vecs).sum(axis=1) == B.depth).all()


def test_trivial_ball_example():
    B = ball(trivial_solution(2), 2)
    assert len(B) == 13
    assert (B.perms == np.arange(2)).all()


@pytest.mark.parametrize("s", CENSUS, ids=lambda s: s.name)
def test_cocycle_resolution_matches_bfs(s):
    B = ball(s, 3)
    assert np.array_equal(resolve_perms(s, B.vecs), B.perms)


def test_ball_closed_under_inverse():
    B = ball(permutation_solution("(1 2)", 2), 3)
    assert (B.inv(np.arange(len(B))) >= 0).all()


@settings(max_examples=40)
@given(st.data())
def test_ball_mul_matches_elements(data):
    s = CENSUS[data.draw(st.integers(0, len(CENSUS) - 1))]
    B = ball(s, 2)
    i, j = data.draw(st.integers(0, len(B) - 1)), data.draw(st.integers(0, len(B) - 1))
    k = int(B.mul(np.array([i]), np.array([j]))[0])
    prod = B.element(i) * B.element(j)
    if prod.length <= 2:
        assert B.element(k) == prod
    else:
        assert k == -1


@settings(max_examples=40)
@given(st.data())
def test_words_and_lengths(data):
    s = CENSUS[data.draw(st.integers(0, len(CENSUS) - 1))]
    letters = [x for x in range(-s.n, s.n + 1) if x]
    word = data.draw(st.lists(st.sampled_from(letters), max_size=6))
    e = word_element(s, word)
    assert e.length <= len(word)
    assert e * e.inverse() == StructureElement.identity(s.n)
    assert tuple(resolve_perms(s, np.array([e.vec]))[0]) == e.perm


@pytest.mark.parametrize("s", CENSUS, ids=lambda s: s.name)
def test_actions_restrict_to_solution(s):
    g = generators(s)
    for x, y in itertools.product(range(s.n), repeat=2):
        l, r = actions(g[x], g[y], s)
        assert l == g[s.lam[x, y]] and r == g[s.rho[y, x]]


@pytest.mark.parametrize("s", CENSUS, ids=lambda s: s.name)
def test_m3_and_axioms_on_ball(s):
    rep = check_on_ball(s, 1, ("M3", "ML1", "MR1", "ML2", "MR2"))
    assert rep.passed, rep.witnesses


def test_identity_acts_trivially():
    B = ball(PERM3, 2)
    one = B.index(StructureElement.identity(3))
    idx = np.arange(len(B))
    assert (B.left(np.full(len(B), one), idx) == idx).all()
    assert (B.right(idx, np.full(len(B), one)) == idx).all()


@pytest.mark.parametrize("L", [1, 2, 3])
def test_trivial_passes_everything(L):
    assert check_on_ball(trivial_solution(3), L, ("lri", "raut", "L_const")).passed


def test_perm3_ball_conditions():
    assert check_on_ball(PERM3, 3, ("lri", "L_const", "raut")).passed


def test_no_x_lri_fails_ball_lri():
    for s in CENSUS:
        x_lri = all(s.rho[x, s.lam[x, y]] == y and s.lam[x, s.rho[x, y]] == y
                    for x in range(s.n) for y in range(s.n))
        if not x_lri:
            assert check_on_ball(s, 2, ("lri",)).failed, s.name


def test_mpl3_lri_solution_fails_on_ball():
    found = [s for s in CENSUS if is_multipermutation(s) and mpl(s) >= 3]
    assert found
    for s in found:
        assert check_on_ball(s, 2, ("lri",)).failed


def test_incomplete_when_radius_too_small():
    B = ball(PERM3, 1)
    rep = check_ball_condition(B, 1, "raut")
    assert rep.verdict == "incomplete" and rep.bound


def test_memory_cap_refusal():
    with pytest.raises(RefusedError) as e:
        ball(CENSUS[-1], 6, cap=100)
    assert "radius_reached" in e.value.bound


def test_ball_labels_and_json():
    B = ball(PERM3, 1)
    labels = {B.label(i) for i in range(len(B))}
    assert "e" in labels and "x1" in labels and "x1^-1" in labels
    assert len(B.to_json()) == len(B)


def test_permutation_group_examples():
    assert permutation_group(trivial_solution(3)).order == 1
    assert permutation_group(trivial_solution(3)).mpl == 0
    g = permutation_group(permutation_solution("(1 2)", 2))
    assert g.order == 2 and g.mpl == 1


@pytest.mark.parametrize("s", [s for s in CENSUS if is_multipermutation(s)], ids=lambda s: s.name)
def test_permutation_group_chain(s):
    g = permutation_group(s)
    assert g.mpl is not None
    assert 0 <= g.mpl <= mpl(s) <= g.mpl + 1


def test_some_mpl2_solution_has_mpl1_group():
    levels = [permutation_group(s).mpl for s in CENSUS if is_multipermutation(s) and mpl(s) == 2]
    assert 1 in levels


def test_inverse_action_is_a_condition_not_an_axiom():
    assert check_on_ball(trivial_solution(2), 2, ("inverse_action",)).passed
    assert any(check_on_ball(s, 1, ("inverse_action",)).failed for s in CENSUS)


@pytest.mark.parametrize("name", ["census:4:5", "census:4:17"])
def test_lri_level3_witness_by_direct_arithmetic(name):
    s = next(t for t in CENSUS if t.name == name)
    lri_x = all(s.rho[x, s.lam[x, y]] == y and s.lam[x, s.rho[x, y]] == y
                for x in range(s.n) for y in range(s.n))
    assert lri_x and mpl(s) == 3
    bad = []
    for u, v in itertools.product([w for w in itertools.product(range(-s.n, s.n + 1), repeat=2)], repeat=2):
        a, b = word_element(s, [c for c in u if c]), word_element(s, [c for c in v if c])
        left, _ = actions(a, b, s)
        if actions(left, a, s)[1] != b or actions(a, actions(b, a, s)[1], s)[0] != b:
            bad.append((u, v))
            break
    assert bad
