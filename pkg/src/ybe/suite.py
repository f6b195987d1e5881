"""The acceptance criteria as named reports (``ybe suite paper``)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._scan import DEFAULT_POLICY, ScanPolicy
from .brace import (
    FiniteBrace,
    check_condition,
    check_conditions,
    check_identity,
    mpl_brace,
    series,
    validate_brace,
)
from .census import braces_of_order
from .errors import RefusedError
from .report import CheckReport, timed
from .rings import (
    RewriteSystem,
    builtin_thm6,
    builtin_thm8,
    check_lri_graded,
    check_raut_graded,
    find_raut_instance,
    mpl_graded,
    p3_fixture,
    reversal_systems,
    to_finite_brace,
    zero_ring,
)
from .solution import (
    check_conditions as solution_conditions,
    is_multipermutation,
    is_trivial,
    mpl,
    permutation_solution,
)
from .census import solution_census
from .structure import check_on_ball, permutation_group

THM6_BASIS = ["x", "y", "xx", "xy", "yx", "yy", "yyy", "yyx", "yxy", "yxx", "xyx", "xxx"]
CENSUS_ORDERS = tuple(range(1, 16)) + (21, 25, 27)
SMALL = 64


def claim(subject: str, check: str, ok: bool, witness=None, seed=None, **counts) -> CheckReport:
    w = [] if ok else [witness if isinstance(witness, tuple) else (witness,)]
    return CheckReport(subject, check, "pass" if ok else "fail", witnesses=w, counts=counts, seed=seed)


def _words(sys: RewriteSystem) -> list[str]:
    return [sys.word_str(w) for w in sys.basis]


# ---------------------------------------------------------------- corpora


def truncated_free(p: int, max_deg: int) -> RewriteSystem:
    """F_p<x, y> modulo all words of length max_deg + 1."""
    import itertools
    rules = [(w, {}) for w in itertools.product(range(2), repeat=max_deg + 1)]
    return RewriteSystem(p, ["x", "y"], rules, max_deg, name=f"free:p{p}:d{max_deg}")


@lru_cache(maxsize=None)
def ring_corpus() -> tuple[RewriteSystem, ...]:
    """Graded rings whose braces have order <= 4096, small enough to scan."""
    out = [zero_ring(2), truncated_free(2, 1), truncated_free(2, 2), truncated_free(3, 2), builtin_thm6()]
    for p, max_dim in ((2, 9), (3, 7)):
        for _, sys in reversal_systems(p):
            if sys.dim <= max_dim:
                out.append(sys)
    return tuple(out)


@lru_cache(maxsize=None)
def ring_braces() -> tuple[tuple[RewriteSystem, FiniteBrace], ...]:
    return tuple((sys, to_finite_brace(sys)) for sys in ring_corpus())


@lru_cache(maxsize=None)
def census_braces() -> tuple[FiniteBrace, ...]:
    out = []
    for m in CENSUS_ORDERS:
        out.extend(braces_of_order(m))
    return tuple(out)


@lru_cache(maxsize=None)
def _validated(b: FiniteBrace) -> CheckReport:
    return validate_brace(b)


def two_sided_corpus():
    """(brace, ring or None) for every two-sided brace of the corpus."""
    out = [(b, sys) for sys, b in ring_braces()]
    for b in census_braces():
        if b.m <= 16 and b.star_associative_report.passed and _validated(b).counts["is_two_sided"]:
            out.append((b, None))
    return out


# ---------------------------------------------------------------- criteria


def criterion_1(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    sys = builtin_thm6()
    parts = [
        claim(sys.name, "basis_is_expected_list", sorted(_words(sys)) == sorted(THM6_BASIS) and sys.dim == 12,
              tuple(_words(sys)), size=sys.dim),
        claim(sys.name, "confluent", sys.confluence.passed, sys.confluence.witness),
        claim(sys.name, "order_4096", sys.ring_order() == 4096, sys.ring_order()),
    ]
    b = to_finite_brace(sys, policy=policy)
    v = validate_brace(b)
    parts.append(claim(b.name, "two_sided_brace", v.passed and v.counts["is_two_sided"] == 1, v.witness))
    raut = check_raut_graded(sys, policy)
    basis = raut["raut_basis_criterion"]
    lit = raut["raut_literal_sampled"]
    parts.append(claim(sys.name, "raut_passes", raut.passed and basis.counts["scanned"] == 1728
                       and lit.counts["scanned"] == policy.samples, raut.witness,
                       basis_triples=basis.counts["scanned"], literal_samples=lit.counts["scanned"]))
    lri = check_lri_graded(sys, policy)
    basis_w = lri["lri_basis_criterion"].witnesses
    parts.append(claim(sys.name, "lri_fails_at_xyx", lri.failed and ("x", "y", "x") in basis_w, lri.witness))
    cex = [p for p in lri.parts if p.check == "lri_literal_counterexample"]
    parts.append(claim(sys.name, "literal_lri_counterexample", bool(cex) and cex[0].failed,
                       None if not cex else cex[0].witness))
    mb = mpl_brace(b)
    parts.append(claim(sys.name, "mpl_3", mpl_graded(sys) == 3 and mb == 3, (mpl_graded(sys), mb)))
    sizes = [len(s) for s in series(b, "paren")]
    parts.append(claim(sys.name, "series_orders", sizes[1:4] == [1024, 64, 1], tuple(sizes)))
    return CheckReport.combine(sys.name, "criterion 1: thm6 regression", parts)


def criterion_2(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    sys = builtin_thm8(2)
    parts = [claim(sys.name, "basis_14_words", sys.dim == 14, sys.dim)]
    raut = check_raut_graded(sys, policy)
    basis_w = raut["raut_basis_criterion"].witnesses
    parts.append(claim(sys.name, "raut_fails_at_xxy", raut.failed and ("x", "x", "y") in basis_w, raut.witness))
    cex = [p for p in raut.parts if p.check == "raut_literal_counterexample"]
    parts.append(claim(sys.name, "literal_raut_counterexample", bool(cex) and cex[0].failed,
                       None if not cex else cex[0].witness))
    parts.append(claim(sys.name, "mpl_3", mpl_graded(sys) == 3, mpl_graded(sys)))
    try:
        to_finite_brace(sys)
        refused = False
    except RefusedError:
        refused = True
    parts.append(claim(sys.name, "brace_refused_at_default_cap", refused, "built"))
    return CheckReport.combine(sys.name, "criterion 2: thm8 regression", parts)


def _lri_booleans(b: FiniteBrace):
    return {
        "lri": check_condition(b, "lri").passed,
        "aca_zero": check_identity(b, "thmlri").passed,
        "cl1": check_condition(b, "cl1").passed,
        "cyclic": check_conditions(b, ("cl1", "cl2", "cr1", "cr2")).passed,
    }


def criterion_3(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    parts = []
    for b, sys in two_sided_corpus():
        vals = _lri_booleans(b)
        if sys is not None:
            vals["graded"] = check_lri_graded(sys, ScanPolicy(policy.max_evals, 0, policy.seed)).passed
        ok = len(set(vals.values())) == 1
        parts.append(claim(b.name, "lri_equivalence", ok, tuple(f"{k}={v}" for k, v in vals.items()),
                           lri=int(vals["lri"])))
    rep = CheckReport.combine("corpus", "criterion 3: lri four-way agreement", parts)
    rep.counts["braces"] = len(parts)
    return rep


def _raut_pair(b: FiniteBrace, policy: ScanPolicy):
    """Literal Raut and the star identity, evaluated on one shared set of triples."""
    from . import _scan
    add, st, R = b.add, b.star, b.right
    seen = {"raut": False, "eq23": False}

    def fn(a, bb, c):
        lit = R[add[a, bb], c] == add[R[a, c], R[bb, c]]
        eq = add[st[st[a, c], R[bb, c]], st[st[bb, c], R[a, c]]] == b.zero
        seen["raut"] |= bool((~lit).any())
        seen["eq23"] |= bool((~eq).any())
        return np.ones(len(a), dtype=bool)

    res = _scan.scan(b.m, 3, fn, policy, salt=80)
    return not seen["raut"], not seen["eq23"], res


def criterion_4(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    # exhaustive up to order 64, sampled above
    policy = ScanPolicy(min(policy.max_evals, SMALL**3), policy.samples, policy.seed)
    parts = []
    for b, sys in two_sided_corpus():
        raut, eq23, res = _raut_pair(b, policy)
        vals = {"raut": raut, "eq23": eq23}
        if sys is not None:
            vals["graded"] = check_raut_graded(sys, ScanPolicy(policy.max_evals, 0, policy.seed)).passed
        saved, b.policy = b.policy, policy
        try:
            w = check_identity(b, "thmE_w")
        finally:
            b.policy = saved
        counts = {"scanned": res.scanned}
        if res.sampled:
            counts["sampled"] = res.scanned
        parts.append(CheckReport.combine(b.name, "raut_equivalence", [
            claim(b.name, "agreement", len(set(vals.values())) == 1, tuple(f"{k}={v}" for k, v in vals.items()),
                  seed=policy.seed if res.sampled else None, **counts),
            w,
        ], seed=policy.seed if res.sampled else None))
    rep = CheckReport.combine("corpus", "criterion 4: Raut identity agreement and w-identity", parts)
    rep.counts["braces"] = len(parts)
    return rep


def criterion_5(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    parts = []
    small = [b for b in census_braces() if b.m <= SMALL] + [b for _, b in ring_braces() if b.m <= SMALL]
    for b in small:
        v = _validated(b)
        if not v.counts["is_left_brace"]:
            continue
        sub = [check_identity(b, "eq01")]
        if v.counts["is_two_sided"]:
            sub += [check_identity(b, "eq1"), check_identity(b, "eqlri4")]
        parts.append(CheckReport.combine(b.name, "identities", sub))
    rep = CheckReport.combine("corpus", "criterion 5: involutivity identities", parts)
    rep.counts["braces"] = len(parts)
    return rep


def _series_contained(b: FiniteBrace):
    plain, paren = series(b, "plain"), series(b, "paren")
    for n in range(max(len(plain), len(paren))):
        gn = plain[min(n, len(plain) - 1)]
        gp = paren[min(n, len(paren) - 1)]
        if not gn <= gp:
            return False, n + 1
    return True, None


def criterion_6(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    parts = []
    for b in census_braces():
        v = _validated(b)
        sub = [v["laut"], v["rump_identity"]]
        assoc = b.star_associative_report.passed
        two = bool(v.counts["is_two_sided"])
        if assoc and b.m % 2 == 1:
            sub.append(claim(b.name, "odd_assoc_two_sided", two, "one-sided"))
        if assoc:
            ok, n = _series_contained(b)
            sub.append(claim(b.name, "plain_in_paren", ok, n))
            if len(series(b, "paren")[-1]) == 1:
                sub.append(claim(b.name, "nilpotent_assoc_two_sided", two, "one-sided"))
        parts.append(CheckReport.combine(b.name, "properties", sub, counts={"star_assoc": int(assoc)}))
    rep = CheckReport.combine("census", "criterion 6: brace properties", parts)
    rep.counts["braces"] = len(parts)
    return rep


def criterion_7(policy: ScanPolicy = DEFAULT_POLICY, L: int = 3) -> CheckReport:
    """Ball checks at radius L, read literally.

    For X with lri and a nontrivial action the criterion requires ball lri,
    L_const and raut.  That holds only when mpl(X) <= 2; the 4-point census
    has lri solutions of level 3, which fail here with explicit witnesses.
    """
    parts = []
    subjects = [permutation_solution("(1 2 3)", 3)] + list(solution_census(4))
    for s in subjects:
        x_lri = solution_conditions(s, ("lri",)).passed
        if is_trivial(s):
            r = check_on_ball(s, L, ("L_const",), policy)
            parts.append(CheckReport.combine(s.name, "trivial_action_L_const", [r]))
        elif x_lri:
            r = check_on_ball(s, L, ("lri", "L_const", "raut"), policy)
            parts.append(CheckReport.combine(s.name, "lri_implies_ball_checks", [r]))
        else:
            r = check_on_ball(s, 2, ("lri",), policy)
            ok = r.failed
            parts.append(claim(s.name, "no_lri_fails_ball_lri", ok, "ball-lri passes", radius=2))
    rep = CheckReport.combine("census", f"criterion 7: ball checks at L={L}", parts)
    rep.counts["radius"] = L
    rep.notes.append(f"radius {L}: no claim beyond the ball")
    return rep


def ball_equivalence(policy: ScanPolicy = DEFAULT_POLICY, L: int = 3) -> CheckReport:
    """ball-lri <=> ball-L_const <=> (X lri and ball-raut), and ball-lri => mpl(X) <= 2."""
    parts = []
    for s in [permutation_solution("(1 2 3)", 3)] + list(solution_census(4)):
        if is_trivial(s):
            continue
        r = check_on_ball(s, L, ("lri", "L_const", "raut"), policy)
        lri, lconst, raut = (r[c].passed for c in ("lri", "L_const", "raut"))
        x_lri = solution_conditions(s, ("lri",)).passed
        level = mpl(s) if is_multipermutation(s) else None
        ok = lri == lconst == (x_lri and raut) and (not lri or (level is not None and level <= 2))
        parts.append(claim(s.name, "equivalence", ok, (f"lri={lri}", f"L_const={lconst}", f"x_lri={x_lri}",
                                                       f"raut={raut}", f"mpl={level}"), radius=L))
    return CheckReport.combine("census", f"ball equivalences at L={L}", parts)


def criterion_8(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    fx = p3_fixture()
    found = find_raut_instance(3)
    same = {(r.lhs, tuple(sorted(r.rhs.items()))) for r in fx.rules} == \
        {(r.lhs, tuple(sorted(r.rhs.items()))) for r in found.rules}
    parts = [claim(fx.name, "fixture_matches_search", same, found.name)]
    r3 = check_raut_graded(fx, policy)
    l3 = check_lri_graded(fx, policy)
    parts.append(claim(fx.name, "p3_raut_passes", r3.passed and bool([w for w in fx.basis if len(w) == 3]),
                       r3.witness, dim=fx.dim))
    parts.append(claim(fx.name, "p3_lri_passes", l3.passed, l3.witness))
    t6 = builtin_thm6()
    parts.append(claim(t6.name, "p2_raut_passes", check_raut_graded(t6, policy).passed, "raut fails"))
    parts.append(claim(t6.name, "p2_lri_fails", check_lri_graded(t6, policy).failed, "lri passes"))
    quick = ScanPolicy(policy.max_evals, 0, policy.seed)
    bad = [s.name for _, s in reversal_systems(3)
           if check_raut_graded(s, quick).passed != check_lri_graded(s, quick).passed]
    parts.append(claim("reversal:p3", "raut_iff_lri_all_systems", not bad, bad[0] if bad else None, systems=144))
    return CheckReport.combine(fx.name, "criterion 8: no 2-torsion boundary", parts)


def criterion_9(policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    parts = []
    for s in solution_census(4):
        if not is_multipermutation(s):
            continue
        g = permutation_group(s, seed=policy.seed)
        mx = mpl(s)
        ok = g.mpl is not None and 0 <= g.mpl <= mx <= g.mpl + 1
        parts.append(claim(s.name, "mpl_chain", ok, (f"mpl(G)={g.mpl}", f"mpl(X)={mx}"),
                           mpl_X=mx, mpl_G=g.mpl if g.mpl is not None else -1, order_G=g.order))
    rep = CheckReport.combine("census", "criterion 9: mpl chain", parts)
    rep.counts["solutions"] = len(parts)
    return rep


CRITERIA = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "7b": ball_equivalence,
    "8": criterion_8,
    "9": criterion_9,
}


def run_suite(policy: ScanPolicy = DEFAULT_POLICY, only=None) -> list[CheckReport]:
    out = []
    for key, fn in CRITERIA.items():
        if only and key not in only:
            continue
        with timed() as t:
            rep = fn(policy)
        rep.elapsed = t["elapsed"]
        out.append(rep)
    return out
