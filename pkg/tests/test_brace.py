import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ybe.brace import (
    FiniteBrace,
    IDENTITIES,
    brace_to_symmetric_group,
    check_conditions,
    check_identity,
    check_neg_star,
    check_star_associative,
    is_ideal,
    is_left_brace,
    is_two_sided,
    mpl_brace,
    series,
    symmetric_group_to_brace,
    trivial_brace,
    validate_brace,
)
from ybe.census import automorphisms, brace_census, braces_of_order, group_table
from ybe.errors import MalformedTableError, PreconditionError
from ybe.solution import validate_solution

CENSUS = brace_census(12)


def _brute_brace_classes(moduli):
    """Isomorphism classes of lambda maps A -> Aut(A) with lam_{a + lam_a(b)} = lam_a lam_b."""
    add, elems = group_table(moduli)
    m = len(elems)
    auts = [tuple(a) for a in automorphisms(moduli)]
    aut_index = {a: i for i, a in enumerate(auts)}
    comp = [[aut_index[tuple(f[g[x]] for x in range(m))] for g in auts] for f in auts]
    found = set()
    ident = aut_index[tuple(range(m))]
    for rest in itertools.product(range(len(auts)), repeat=m - 1):
        lam = (ident,) + rest
        if all(lam[add[a, auts[lam[a]][b]]] == comp[lam[a]][lam[b]] for a in range(m) for b in range(m)):
            forms = []
            for phi in auts:
                phi_inv = tuple(np.argsort(phi))
                # lam'_{phi(a)} = phi lam_a phi^-1
                new = [None] * m
                for a in range(m):
                    new[phi[a]] = comp[comp[aut_index[phi]][lam[a]]][aut_index[phi_inv]]
                forms.append(tuple(new))
            found.add(min(forms))
    return found


@pytest.mark.parametrize("moduli", [(2,), (3,), (4,), (2, 2), (2, 3), (5,), (8,), (2, 5)])
def test_census_matches_brute_force(moduli):
    m = int(np.prod(moduli))
    label = "x".join(f"Z{n}" for n in moduli)
    ours = [b for b in braces_of_order(m) if b.name.split(":")[2] == label]
    assert len(ours) == len(_brute_brace_classes(moduli))


def test_census_counts():
    counts = [len(braces_of_order(m)) for m in range(1, 16)]
    assert counts == [1, 1, 1, 4, 1, 2, 1, 27, 4, 2, 1, 10, 1, 2, 1]


def _python_left_brace(b):
    m, add, mul = b.m, b.add.tolist(), b.mul.tolist()
    for a, x, y in itertools.product(range(m), repeat=3):
        if add[a][x] != add[x][a]:
            return False
        if add[add[a][x]][y] != add[a][add[x][y]] or mul[mul[a][x]][y] != mul[a][mul[x][y]]:
            return False
        # a(x + y) + a = ax + ay
        if add[mul[a][add[x][y]]][a] != add[mul[a][x]][mul[a][y]]:
            return False
    return True


@pytest.mark.parametrize("b", [b for b in CENSUS if b.m <= 8], ids=lambda b: b.name)
def test_validate_agrees_with_python_oracle(b):
    assert is_left_brace(b) == _python_left_brace(b) is True


def test_broken_brace_detected():
    b = braces_of_order(4)[1]
    mul = b.mul.copy()
    mul[1, 2], mul[1, 3] = mul[1, 3], mul[1, 2]
    bad = FiniteBrace(b.add, mul, name="broken")
    assert not is_left_brace(bad) and not _python_left_brace(bad)
    assert validate_brace(bad).failed


def test_malformed_tables():
    with pytest.raises(MalformedTableError):
        FiniteBrace([[0, 1]], [[0, 1]])


@pytest.mark.parametrize("b", CENSUS, ids=lambda b: b.name)
def test_always_true_identities(b):
    assert check_identity(b, "eq01").passed
    if is_two_sided(b):
        assert check_neg_star(b).passed
    L, add = b.left, b.add
    assert (L[:, add] == add[L[:, :, None], L[:, None, :]]).all()  # Laut


@pytest.mark.parametrize("b", CENSUS, ids=lambda b: b.name)
def test_two_sided_iff_star_associative(b):
    assert is_two_sided(b) == check_star_associative(b).passed


def test_neg_star_fails_somewhere_one_sided():
    rep = check_neg_star(braces_of_order(8)[1])
    assert rep.failed and len(rep.witnesses[0]) == 2


def test_two_sided_identities_need_two_sided():
    one_sided = [b for b in CENSUS if not is_two_sided(b)]
    assert one_sided
    with pytest.raises(PreconditionError):
        check_identity(one_sided[0], "eq1")


def test_trivial_brace():
    b = trivial_brace(6)
    assert validate_brace(b).passed and is_two_sided(b)
    assert mpl_brace(b) == 1
    assert (b.star == b.zero).all()
    assert mpl_brace(trivial_brace(1)) == 0


@pytest.mark.parametrize("b", CENSUS, ids=lambda b: b.name)
def test_series_terms_are_ideals_and_decreasing(b):
    chain = series(b, "paren")
    for a, c in zip(chain, chain[1:]):
        assert (c.mask <= a.mask).all()
        assert is_ideal(b, c).passed
    plain = series(b, "plain")
    for a, c in zip(plain, plain[1:]):
        assert (c.mask <= a.mask).all()


@pytest.mark.parametrize("b", [b for b in CENSUS if b.m <= 8], ids=lambda b: b.name)
def test_symmetric_group_round_trip(b):
    s = brace_to_symmetric_group(b)
    assert validate_solution(s).passed
    back = symmetric_group_to_brace(b.mul, b.left, name="back")
    assert np.array_equal(back.add, b.add)


@given(st.data())
def test_relabel_is_isomorphism(data):
    b = CENSUS[data.draw(st.integers(0, len(CENSUS) - 1))]
    p = data.draw(st.permutations(range(b.m)))
    c = b.relabel(p)
    assert is_left_brace(c)
    assert is_two_sided(c) == is_two_sided(b)
    assert mpl_brace(c) == mpl_brace(b)
    assert [len(x) for x in series(c)] == [len(x) for x in series(b)]


@given(st.data())
def test_star_definition(data):
    b = CENSUS[data.draw(st.integers(0, len(CENSUS) - 1))]
    a, c = data.draw(st.integers(0, b.m - 1)), data.draw(st.integers(0, b.m - 1))
    # ab = a*b + a + b
    assert b.mul[a, c] == b.add[b.add[b.star[a, c], a], c]
    # a^c is the left action of the inverse of ^a c, applied to a
    assert b.mul[a, c] == b.mul[b.left[a, c], b.right[a, c]]


def test_conditions_report_witnesses():
    for b in CENSUS:
        rep = check_conditions(b)
        for p in rep.parts:
            assert p.passed or p.witnesses


def test_lri_iff_thmlri_on_two_sided():
    for b in CENSUS:
        if is_two_sided(b):
            lri = check_conditions(b, ("lri",)).passed
            assert lri == check_identity(b, "thmlri").passed, b.name


def test_identity_names():
    assert "eq01" in IDENTITIES
