"""Small corpora for the property suites.

Braces are found as regular subgroups of the holomorph: for an abelian
group A, a left brace with additive group A is a map ``a -> lam_a`` into
Aut(A) with ``lam_0 = id`` and ``lam_{a + lam_a(b)} = lam_a lam_b``; the
product is ``a.b = a + lam_a(b)``.  Isomorphic braces on the same A are
conjugate under Aut(A), so the canonical form is the least conjugate.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .brace import FiniteBrace
from .errors import RefusedError
from .solution import enumerate_solutions

CENSUS_MAX_ORDER = 15
# odd orders above the bound that are still cheap; Z3^3 (|Aut| = 11232) is left out of 27
EXTRA_ORDERS = {21: (), 25: (), 27: ((3, 3, 3),)}


def _partitions(k, largest=None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def _factor(m):
    out, p = {}, 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def abelian_groups(m: int) -> list[tuple[int, ...]]:
    """Primary cyclic decompositions of every abelian group of order ``m``."""
    per_prime = []
    for p, k in sorted(_factor(m).items()):
        per_prime.append([tuple(p**e for e in part) for part in _partitions(k)])
    return [sum(choice, ()) for choice in itertools.product(*per_prime)] if per_prime else [()]


def group_table(moduli: tuple[int, ...]) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Addition table of Z_{n1} x ... x Z_{nk}; elements listed in lexicographic order."""
    elems = list(itertools.product(*[range(n) for n in moduli])) or [()]
    index = {e: i for i, e in enumerate(elems)}
    m = len(elems)
    add = np.empty((m, m), dtype=np.int32)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i, j] = index[tuple((x + y) % n for x, y, n in zip(a, b, moduli))]
    return add, elems


def _order(add, a):
    k, x = 1, a
    while x != 0:
        x = add[x, a]
        k += 1
    return k


def automorphisms(moduli: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Aut(A) as tuples of element images, identity first."""
    add, elems = group_table(moduli)
    m = len(elems)
    if not moduli:
        return [(0,)]
    index = {e: i for i, e in enumerate(elems)}
    gens = [index[tuple(int(i == j) for j in range(len(moduli)))] for i in range(len(moduli))]
    orders = [_order(add, a) for a in range(m)]
    candidates = [[a for a in range(m) if moduli[i] % orders[a] == 0] for i in range(len(moduli))]
    ident = tuple(range(m))
    auts = []
    for images in itertools.product(*candidates):
        img = [0] * m
        for idx, e in enumerate(elems):
            acc = 0
            for coef, g in zip(e, images):
                for _ in range(coef):
                    acc = add[acc, g]
            img[idx] = acc
        if len(set(img)) == m:
            # homomorphism: respects addition
            t = tuple(img)
            if all(t[add[a, b]] == add[t[a], t[b]] for a in range(m) for b in gens):
                auts.append(t)
    auts.sort(key=lambda t: t != ident)
    return auts


def _perm_order(t):
    k, cur, ident = 1, t, tuple(range(len(t)))
    while cur != ident:
        cur = tuple(t[x] for x in cur)
        k += 1
    return k


def brace_structures(moduli: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Canonical ``lam`` maps (as Aut indices per element) for every brace on A, up to isomorphism."""
    add, elems = group_table(moduli)
    m = len(elems)
    auts = automorphisms(moduli)
    aindex = {t: i for i, t in enumerate(auts)}
    inv = [aindex[tuple(np.argsort(t).tolist())] for t in auts]
    # a -> lam_a is a homomorphism of (A, .) into Aut(A), so each lam_a has order dividing m
    allowed = [f for f in range(len(auts)) if m % _perm_order(auts[f]) == 0]

    def comp(i, j):
        f, g = auts[i], auts[j]
        return aindex[tuple(f[g[x]] for x in range(m))]

    comp = lru_cache(maxsize=None)(comp)
    allowed_set = set(allowed)
    found = set()
    lam = [-1] * m

    def assign(a, f, trail):
        stack = [(a, f)]
        while stack:
            a, f = stack.pop()
            if lam[a] != -1:
                if lam[a] != f:
                    return False
                continue
            if f not in allowed_set:
                return False
            lam[a] = f
            trail.append(a)
            for b in range(m):
                g = lam[b]
                if g == -1:
                    continue
                c = add[a, auts[f][b]]
                stack.append((c, comp(f, g)))
                c = add[b, auts[g][a]]
                stack.append((c, comp(g, f)))
        return True

    def canonical():
        best = None
        for p in range(len(auts)):
            phi, phinv = auts[p], inv[p]
            conj = [0] * m
            for a in range(m):
                conj[phi[a]] = comp(comp(p, lam[a]), phinv)
            key = tuple(conj)
            if best is None or key < best:
                best = key
        return best

    def search():
        try:
            a = lam.index(-1)
        except ValueError:
            found.add(canonical())
            return
        for f in allowed:
            trail = []
            if assign(a, f, trail):
                search()
            for x in trail:
                lam[x] = -1

    trail0 = []
    assign(0, 0, trail0)
    search()
    return sorted(found)


def brace_from_structure(moduli, lam_idx, name) -> FiniteBrace:
    add, elems = group_table(moduli)
    auts = automorphisms(moduli)
    m = len(elems)
    img = np.array([auts[i] for i in lam_idx], dtype=np.int32)  # img[a, b] = lam_a(b)
    mul = add[np.arange(m)[:, None], img]
    names = ["(" + ",".join(map(str, e)) + ")" for e in elems] if moduli else ["()"]
    return FiniteBrace(add, mul, names=names, name=name)


@lru_cache(maxsize=None)
def braces_of_order(m: int) -> tuple[FiniteBrace, ...]:
    """One brace per isomorphism class; additive groups listed in EXTRA_ORDERS are skipped."""
    if m > CENSUS_MAX_ORDER and m not in EXTRA_ORDERS:
        raise RefusedError(f"census search refused for order {m}", {"order": m, "max_order": CENSUS_MAX_ORDER})
    out = []
    for moduli in abelian_groups(m):
        if moduli in EXTRA_ORDERS.get(m, ()):
            continue
        label = "x".join(f"Z{n}" for n in moduli) or "Z1"
        for k, lam_idx in enumerate(brace_structures(moduli)):
            out.append(brace_from_structure(moduli, lam_idx, f"census:{m}:{label}:{k + 1}"))
    return tuple(out)


def brace_census(max_order: int = 8, extra_orders=()) -> list[FiniteBrace]:
    """Every left brace of order <= ``max_order`` (plus ``extra_orders``), one per isomorphism class."""
    out = []
    for m in list(range(1, max_order + 1)) + [o for o in extra_orders if o > max_order]:
        out.extend(braces_of_order(m))
    return out


@lru_cache(maxsize=None)
def _solutions(n):
    return tuple(enumerate_solutions(n))


def solution_census(max_n: int = 4) -> list:
    out = []
    for n in range(1, max_n + 1):
        out.extend(_solutions(n))
    return out
