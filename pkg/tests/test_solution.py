import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ybe.census import solution_census
from ybe.errors import MalformedTableError, NotAMultipermutationError, RefusedError
from ybe.solution import (
    FiniteSolution,
    canonical_key,
    check_conditions,
    enumerate_solutions,
    format_cycles,
    is_multipermutation,
    is_solution,
    is_trivial,
    mpl,
    parse_permutation,
    permutation_solution,
    retract,
    retraction_chain,
    trivial_solution,
    validate_solution,
)


def _brute_is_solution(lam, rho):
    n = len(lam)
    r = lambda x, y: (lam[x][y], rho[y][x])
    for x, y in itertools.product(range(n), repeat=2):
        if r(*r(x, y)) != (x, y):
            return False
    for x, y, z in itertools.product(range(n), repeat=3):
        # r12 r23 r12 == r23 r12 r23
        a, b = r(x, y); b, c = r(b, z); a, b = r(a, b)
        u, v = r(y, z); t, u = r(x, u); u, v = r(u, v)
        if (a, b, c) != (t, u, v):
            return False
    return True


def _brute_classes(n):
    perms = list(itertools.permutations(range(n)))
    found = set()
    for lam in itertools.product(perms, repeat=n):
        for rho in itertools.product(perms, repeat=n):
            if not _brute_is_solution(lam, rho):
                continue
            forms = []
            for p in perms:
                q = np.argsort(p)
                forms.append(tuple(p[lam[q[x]][q[y]]] for x in range(n) for y in range(n))
                             + tuple(p[rho[q[x]][q[y]]] for x in range(n) for y in range(n)))
            found.add(min(forms))
    return found


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    assert len(enumerate_solutions(n)) == len(_brute_classes(n))


def test_enumeration_counts():
    assert [len(enumerate_solutions(n)) for n in range(1, 5)] == [1, 2, 5, 23]


def test_enumeration_refuses_large_n():
    with pytest.raises(RefusedError):
        enumerate_solutions(50)


def test_enumerated_are_solutions_and_pairwise_distinct():
    for n in range(1, 5):
        sols = enumerate_solutions(n)
        assert all(validate_solution(s).passed for s in sols)
        assert len({canonical_key(s) for s in sols}) == len(sols)


def test_trivial_and_permutation_solutions():
    t = trivial_solution(4)
    assert validate_solution(t).passed and is_trivial(t) and mpl(t) == 1
    s = permutation_solution("(1 2 3)", 3)
    assert validate_solution(s).passed and not is_trivial(s)
    assert mpl(s) == 1  # all lambda rows equal
    assert mpl(trivial_solution(1)) == 0


def test_validate_reports_braid_witness():
    lam = np.array([[1, 0, 2], [0, 1, 2], [0, 1, 2]])
    s = FiniteSolution(lam, np.tile(np.arange(3), (3, 1)), name="bad")
    rep = validate_solution(s)
    assert rep.failed and rep.witnesses


def test_degenerate_table_detected():
    s = FiniteSolution(np.zeros((2, 2), dtype=int), np.zeros((2, 2), dtype=int), name="deg")
    assert validate_solution(s)["non_degenerate"].failed


def test_malformed_permutation():
    with pytest.raises(MalformedTableError):
        parse_permutation("(1 1)", 3)
    with pytest.raises(MalformedTableError):
        parse_permutation("(1 5)", 3)


@given(st.permutations(range(5)))
def test_cycle_notation_round_trip(p):
    img = np.array(p)
    assert np.array_equal(parse_permutation(format_cycles(img), 5), img)


def test_rho_derived_from_lambda():
    for s in enumerate_solutions(3):
        derived = FiniteSolution(s.lam)
        assert np.array_equal(derived.rho, s.rho) and derived.rho_derived


def test_conditions_on_trivial():
    assert check_conditions(trivial_solution(3)).passed


def test_lri_iff_cyclic_on_census():
    # lri solutions satisfy all cyclic conditions
    for s in solution_census(4):
        if check_conditions(s, ("lri",)).passed:
            assert check_conditions(s, ("cl1", "cr1", "cl2", "cr2")).passed, s.name


def test_retraction_of_permutation_solution():
    s = permutation_solution("(1 2)", 3)
    step = retract(s)
    assert step.induced.n == 1
    chain = retraction_chain(s)
    assert [c.n for c in chain] == [3, 1]


def test_non_multipermutation_raises():
    for s in solution_census(4):
        if not is_multipermutation(s):
            with pytest.raises(NotAMultipermutationError):
                mpl(s)
            return
    pytest.skip("every 4-point solution is multipermutation")


@settings(max_examples=30)
@given(st.data())
def test_relabel_preserves_invariants(data):
    sols = enumerate_solutions(4)
    s = sols[data.draw(st.integers(0, len(sols) - 1))]
    p = data.draw(st.permutations(range(4)))
    t = s.relabel(p)
    assert validate_solution(t).passed
    assert canonical_key(t) == canonical_key(s)
    assert is_multipermutation(t) == is_multipermutation(s)
    if is_multipermutation(s):
        assert mpl(t) == mpl(s)
