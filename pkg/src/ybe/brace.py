"""Finite left braces given by addition and multiplication Cayley tables.

Derived tables (built once, at construction):

* ``star[a, b] = a.b - a - b``
* ``left[a, b]  = a.b - a``            (left action, ``^a b``)
* ``right[a, b] = ^((^a b)^-1) a``    (right action, ``a^b``)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _scan, kernels
from .errors import AxiomError, InvariantError, MalformedTableError, NotABraceError, PreconditionError
from .report import CheckReport, timed
from .solution import FiniteSolution, validate_solution

CONDITIONS = ("raut", "lri", "cl1", "cl2", "cr1", "cr2")
IDENTITIES = ("eq01", "eq1", "eqlri4", "cl1_star", "thmlri", "thmE_w", "thmE_raut")
TWO_SIDED_IDENTITIES = ("eq1", "eqlri4", "thmlri", "thmE_w", "thmE_raut")


def _table(t, m=None, what="table"):
    a = np.asarray(t)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise MalformedTableError(f"{what} must be a non-empty square table, got shape {a.shape}")
    if m is not None and a.shape[0] != m:
        raise MalformedTableError(f"{what} has order {a.shape[0]}, expected {m}")
    if not np.issubdtype(a.dtype, np.integer):
        raise MalformedTableError(f"{what} must hold integers")
    if a.min() < 0 or a.max() >= a.shape[0]:
        raise MalformedTableError(f"{what} has an entry outside 0..{a.shape[0] - 1}")
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.setflags(write=False)
    return a


def _neutral(op):
    m = len(op)
    idx = np.arange(m)
    hits = np.flatnonzero((op == idx).all(axis=1) & (op.T == idx).all(axis=1))
    return int(hits[0]) if len(hits) else None


def _inverses(op, e):
    if e is None:
        return None
    hit = op == e
    if not (hit.any(axis=1).all()):
        return None
    inv = np.argmax(hit, axis=1).astype(np.int32)
    if not (op[inv, np.arange(len(op))] == e).all():
        return None
    return inv


def _ro(a):
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.setflags(write=False)
    return a


class FiniteBrace:
    """A finite set with ``+`` and ``.`` tables (0-based indices)."""

    def __init__(self, add, mul, names=None, name="brace", policy: _scan.ScanPolicy | None = None):
        self.add = _table(add, what="add")
        self.mul = _table(mul, len(self.add), what="mul")
        self.m = len(self.add)
        if names is not None and len(names) != self.m:
            raise MalformedTableError(f"{len(names)} names for order {self.m}")
        self.names = list(names) if names is not None else None
        self.name = name
        self.policy = policy or _scan.DEFAULT_POLICY
        self.zero = _neutral(self.add)
        self.one = _neutral(self.mul)
        self.neg = _inverses(self.add, self.zero)
        self.inv = _inverses(self.mul, self.one)
        self.star = self.left = self.right = None
        if self.neg is not None and self.inv is not None:
            add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
            idx = np.arange(self.m)
            self.left = _ro(add[mul, neg[:, None]])
            self.star = _ro(add[self.left, neg[None, :]])
            self.right = _ro(self.left[inv[self.left], idx[:, None]])

    def __repr__(self):
        return f"FiniteBrace(name={self.name!r}, order={self.m})"

    def __len__(self):
        return self.m

    def label(self, i):
        return self.names[i] if self.names is not None else int(i) + 1

    def index(self, label) -> int:
        if self.names is not None and label in self.names:
            return self.names.index(label)
        return int(label) - 1

    def require(self):
        if self.star is None:
            raise NotABraceError(f"{self.name}: (+) or (.) lacks a neutral element or inverses")

    def key(self) -> bytes:
        return self.add.tobytes() + self.mul.tobytes()

    def relabel(self, perm) -> "FiniteBrace":
        p = np.asarray(perm)
        q = np.argsort(p)
        add = p[self.add[np.ix_(q, q)]]
        mul = p[self.mul[np.ix_(q, q)]]
        names = [self.names[i] for i in q] if self.names is not None else None
        return FiniteBrace(add, mul, names, name=self.name, policy=self.policy)

    def to_json(self) -> dict:
        d = {"order": self.m, "add": (self.add + 1).tolist(), "mul": (self.mul + 1).tolist()}
        if self.names is not None:
            d["names"] = [str(n) for n in self.names]
        return d

    # -------- cached derived facts (deterministic; computed once)

    @cached_property
    def two_sided_report(self) -> CheckReport:
        self.require()
        add, star = self.add, self.star
        with timed() as t:
            res = _scan.scan(self.m, 3,
                             lambda a, b, c: star[add[a, b], c] == add[star[a, c], star[b, c]],
                             self.policy, salt=11)
        return _scan.report(self.name, "right_distributive", res, self.label, t["elapsed"])

    @cached_property
    def star_associative_report(self) -> CheckReport:
        self.require()
        with timed() as t:
            res = _scan.kernel_scan(kernels.assoc, (self.star,), self.m, self.policy, salt=12)
        return _scan.report(self.name, "star_associative", res, self.label, t["elapsed"])


# ------------------------------------------------------------------ validation


def _group_report(b: FiniteBrace, op, e, inv, check, abelian, salt):
    parts = []
    with timed() as t:
        if e is None:
            w = [("no_neutral",)]
        elif inv is None:
            w = [("no_inverses",)]
        else:
            w = []
    parts.append(CheckReport(b.name, "neutral_and_inverses", "fail" if w else "pass",
                             witnesses=w, counts={"scanned": b.m * b.m}, elapsed=t["elapsed"]))
    if abelian:
        with timed() as t:
            res = _scan.scan(b.m, 2, lambda x, y: op[x, y] == op[y, x], b.policy, salt=salt)
        parts.append(_scan.report(b.name, "commutative", res, b.label, t["elapsed"]))
    with timed() as t:
        res = _scan.kernel_scan(kernels.assoc, (op,), b.m, b.policy, salt=salt + 1)
    parts.append(_scan.report(b.name, "associative", res, b.label, t["elapsed"]))
    return CheckReport.combine(b.name, check, parts)


def validate_brace(b: FiniteBrace) -> CheckReport:
    """Group axioms, shared neutral, left/right brace laws, Laut and Rump's identity.

    ``b`` is a left brace iff abelian_add, group_mul, shared_neutral and
    left_brace_law pass; two-sided iff right_brace_law passes as well.
    """
    parts = [
        _group_report(b, b.add, b.zero, b.neg, "abelian_add", True, 20),
        _group_report(b, b.mul, b.one, b.inv, "group_mul", False, 30),
    ]
    ok = b.zero is not None and b.zero == b.one
    w = [] if ok else [(b.label(b.zero) if b.zero is not None else None,
                        b.label(b.one) if b.one is not None else None)]
    parts.append(CheckReport(b.name, "shared_neutral", "pass" if ok else "fail", witnesses=w))
    for check, kern, tables, salt in (
        ("left_brace_law", kernels.left_brace, (b.add, b.mul), 40),
        ("right_brace_law", kernels.right_brace, (b.add, b.mul), 41),
    ):
        with timed() as t:
            res = _scan.kernel_scan(kern, tables, b.m, b.policy, salt)
        parts.append(_scan.report(b.name, check, res, b.label, t["elapsed"]))
    for check, kern, attr, salt in (
        ("laut", kernels.laut, "left", 42),
        ("rump_identity", kernels.rump, "star", 43),
    ):
        tab = getattr(b, attr)
        if tab is None:
            parts.append(CheckReport(b.name, check, "refused", notes=["needs additive and multiplicative inverses"]))
            continue
        with timed() as t:
            res = _scan.kernel_scan(kern, (b.add, tab), b.m, b.policy, salt)
        parts.append(_scan.report(b.name, check, res, b.label, t["elapsed"]))
    rep = CheckReport.combine(b.name, "validate_brace", parts)
    left_ok = all(rep[c].passed for c in ("abelian_add", "group_mul", "shared_neutral", "left_brace_law"))
    rep.counts["is_left_brace"] = int(left_ok)
    rep.counts["is_two_sided"] = int(left_ok and rep["right_brace_law"].passed)
    if b.zero is not None:
        rep.notes.append(f"additive neutral is element {b.label(b.zero)}")
    return rep


def is_left_brace(b: FiniteBrace) -> bool:
    return bool(validate_brace(b).counts["is_left_brace"])


# ------------------------------------------------------------------ star


def star(b: FiniteBrace, a1: int, a2: int) -> int:
    b.require()
    return int(b.star[a1, a2])


def check_star_associative(b: FiniteBrace) -> CheckReport:
    return b.star_associative_report


def check_neg_star(b: FiniteBrace) -> CheckReport:
    """``(-a) * c = -(a * c)`` on all pairs."""
    b.require()
    st, neg = b.star, b.neg
    with timed() as t:
        res = _scan.scan(b.m, 2, lambda a, c: st[neg[a], c] == neg[st[a, c]], b.policy)
    return _scan.report(b.name, "neg_star", res, b.label, t["elapsed"])


# ------------------------------------------------------------------ conditions


def _condition_fn(b, which):
    L, R, add = b.left, b.right, b.add
    if which == "lri":
        return 2, lambda x, y: (R[L[x, y], x] == y) & (L[x, R[y, x]] == y)
    if which == "cl1":
        return 2, lambda x, y: L[R[y, x], x] == L[y, x]
    if which == "cr1":
        return 2, lambda x, y: R[x, L[x, y]] == R[x, y]
    if which == "cl2":
        return 2, lambda x, y: L[L[x, y], x] == L[y, x]
    if which == "cr2":
        return 2, lambda x, y: R[x, R[y, x]] == R[x, y]
    if which == "raut":
        return 3, None
    raise ValueError(f"unknown condition {which!r}")


def check_condition(b: FiniteBrace, which: str) -> CheckReport:
    """Raut, lri or one cyclic condition, read off the derived action tables."""
    b.require()
    arity, fn = _condition_fn(b, which)
    with timed() as t:
        if which == "raut":
            res = _scan.kernel_scan(kernels.raut, (b.add, b.right), b.m, b.policy, salt=50)
        else:
            res = _scan.scan(b.m, arity, fn, b.policy)
    return _scan.report(b.name, which, res, b.label, t["elapsed"])


def check_conditions(b: FiniteBrace, which=CONDITIONS) -> CheckReport:
    return CheckReport.combine(b.name, "conditions", [check_condition(b, w) for w in which])


def _identity_fn(b, which):
    add, st, L, R, mul, zero = b.add, b.star, b.left, b.right, b.mul, b.zero
    if which == "eq01":
        # (a*c + c)*a^c + a^c = a
        def f(a, c):
            ac = R[a, c]
            return add[st[add[st[a, c], c], ac], ac] == a
        return 2, f
    if which == "eq1":
        # a*c*a^c + c*a^c + a^c = a
        def f(a, c):
            ac = R[a, c]
            return add[add[st[st[a, c], ac], st[c, ac]], ac] == a
        return 2, f
    if which == "eqlri4":
        # ^(^a c) a = a*c*a + ^c a
        return 2, lambda a, c: L[L[a, c], a] == add[st[st[a, c], a], L[c, a]]
    if which == "cl1_star":
        # (c^a)*a = c*a
        return 2, lambda a, c: st[R[c, a], a] == st[c, a]
    if which == "thmlri":
        return 2, lambda a, c: st[st[a, c], a] == zero
    if which == "thmE_w":
        # w = (^(a+b) c)(a^c + b^c)  equals  a*c*b^c + b*c*a^c + u,  u = (a+b)c
        def f(a, bb, c):
            s = add[a, bb]
            u = mul[s, c]
            w = mul[L[s, c], add[R[a, c], R[bb, c]]]
            rhs = add[add[st[st[a, c], R[bb, c]], st[st[bb, c], R[a, c]]], u]
            return w == rhs
        return 3, f
    if which == "thmE_raut":
        return 3, lambda a, bb, c: add[st[st[a, c], R[bb, c]], st[st[bb, c], R[a, c]]] == zero
    raise ValueError(f"unknown identity {which!r}")


def check_identity(b: FiniteBrace, which: str) -> CheckReport:
    """Scan one of the star-identities of a (two-sided) brace over all pairs/triples."""
    b.require()
    if which in TWO_SIDED_IDENTITIES and not is_two_sided(b):
        raise PreconditionError(f"identity {which} needs a two-sided brace; {b.name} is one-sided")
    arity, fn = _identity_fn(b, which)
    with timed() as t:
        res = _scan.scan(b.m, arity, fn, b.policy, salt=60 + IDENTITIES.index(which))
    return _scan.report(b.name, which, res, b.label, t["elapsed"])


# ------------------------------------------------------------------ subsets & series


class BraceSubset:
    """Membership flags over the elements of a brace."""

    __slots__ = ("mask",)

    def __init__(self, mask):
        self.mask = np.asarray(mask, dtype=bool)
        self.mask.setflags(write=False)

    @classmethod
    def of(cls, m, members):
        mask = np.zeros(m, dtype=bool)
        mask[list(members)] = True
        return cls(mask)

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self):
        return int(self.mask.sum())

    def __contains__(self, i):
        return bool(self.mask[i])

    def __eq__(self, other):
        return isinstance(other, BraceSubset) and np.array_equal(self.mask, other.mask)

    def __le__(self, other):
        return bool((~self.mask | other.mask).all())

    def __repr__(self):
        return f"BraceSubset(size={len(self)})"


def additive_span(b: FiniteBrace, gens) -> BraceSubset:
    """Additive subgroup generated by ``gens``."""
    mask = np.zeros(b.m, dtype=bool)
    mask[b.zero] = True
    for g in np.unique(np.asarray(gens, dtype=np.int64)):
        if mask[g]:
            continue
        base = mask.copy()
        cur = np.flatnonzero(base)
        coset = b.add[cur, g]
        while not base[coset[0]]:
            mask[coset] = True
            coset = b.add[coset, g]
    return BraceSubset(mask)


def _assert_additive_subgroup(b, s: BraceSubset):
    mem = s.members
    if not s.mask[b.add[np.ix_(mem, mem)]].all() or not s.mask[b.neg[mem]].all():
        raise InvariantError(f"{b.name}: subset is not an additive subgroup")


def series(b: FiniteBrace, kind: str = "paren", n_max: int | None = None) -> list[BraceSubset]:
    """Rump's chains: ``paren`` is G^(n+1) = G^(n) * G, ``plain`` is G^(n+1) = G * G^n.

    Returns [G^1, G^2, ...] up to the first repetition (kept once) or ``n_max`` terms.
    """
    b.require()
    if kind not in ("paren", "plain"):
        raise ValueError(f"unknown series kind {kind!r}")
    cur = BraceSubset(np.ones(b.m, dtype=bool))
    out = [cur]
    while n_max is None or len(out) < n_max:
        mem = cur.members
        prods = b.star[mem, :] if kind == "paren" else b.star[:, mem]
        gens = np.flatnonzero(np.bincount(prods.ravel(), minlength=b.m))
        nxt = additive_span(b, gens)
        _assert_additive_subgroup(b, nxt)
        if nxt == cur:
            break
        out.append(nxt)
        cur = nxt
    return out


def mpl_brace(b: FiniteBrace) -> int | None:
    """Least m with G^(m+1) = 0 and G^(m) != 0; 0 for the one-element brace; None if never 0."""
    chain = series(b, "paren")
    if len(chain[-1]) != 1:
        return None
    return len(chain) - 1


def is_ideal(b: FiniteBrace, s: BraceSubset) -> CheckReport:
    """Normal subgroup of (G, .) closed under the left action of G."""
    b.require()
    mem = s.members
    mask = s.mask
    parts = []
    checks = []
    checks.append(("contains_one", [] if mask[b.one] else [(b.label(b.one),)]))
    prod = b.mul[np.ix_(mem, mem)]
    bad = np.argwhere(~mask[prod])
    checks.append(("mul_closed", [(b.label(mem[i]), b.label(mem[j])) for i, j in bad[:1]]))
    bad = np.flatnonzero(~mask[b.inv[mem]])
    checks.append(("inverse_closed", [(b.label(mem[i]),) for i in bad[:1]]))
    conj = b.mul[b.mul[:, mem], b.inv[:, None]]  # g s g^-1
    bad = np.argwhere(~mask[conj])
    checks.append(("normal", [(b.label(g), b.label(mem[i])) for g, i in bad[:1]]))
    act = b.left[:, mem]
    bad = np.argwhere(~mask[act])
    checks.append(("left_action_invariant", [(b.label(g), b.label(mem[i])) for g, i in bad[:1]]))
    for name, w in checks:
        parts.append(CheckReport(b.name, name, "fail" if w else "pass", witnesses=w))
    rep = CheckReport.combine(b.name, "is_ideal", parts, counts={"size": len(mem)})
    if rep.passed:
        add_ok = mask[b.add[np.ix_(mem, mem)]].all() and mask[b.neg[mem]].all()
        if not add_ok:
            raise InvariantError(f"{b.name}: an ideal that is not an additive subgroup")
    return rep


def is_two_sided(b: FiniteBrace) -> bool:
    """Right distributivity of ``*`` (sampled above the scan threshold)."""
    return b.two_sided_report.passed


def has_two_torsion_add(b: FiniteBrace) -> bool:
    b.require()
    idx = np.arange(b.m)
    return bool(((b.add[idx, idx] == b.zero) & (idx != b.zero)).any())


def is_mul_nilpotent(b: FiniteBrace, max_order: int = 64) -> bool:
    """Lower central series of (G, .) reaches {1} (brute force, small orders only)."""
    b.require()
    if b.m > max_order:
        raise PreconditionError(f"nilpotency check limited to order <= {max_order}")
    mul, inv = b.mul, b.inv
    comm = mul[mul[inv[:, None], inv[None, :]], mul]  # a^-1 b^-1 a b
    cur = np.ones(b.m, dtype=bool)
    while True:
        mem = np.flatnonzero(cur)
        gens = np.unique(comm[mem, :])
        nxt = _mul_span(b, gens)
        if nxt.sum() == 1:
            return True
        if (nxt == cur).all():
            return False
        cur = nxt


def _mul_span(b, gens):
    mask = np.zeros(b.m, dtype=bool)
    mask[b.one] = True
    frontier = [b.one]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(b.mul[x, g])
                if not mask[y]:
                    mask[y] = True
                    nxt.append(y)
        frontier = nxt
    return mask


# ------------------------------------------------------------------ brace <-> symmetric group


def braided_group_report(mul, lam, rho, one, name="group", policy=_scan.DEFAULT_POLICY, label=lambda i: i + 1):
    """ML0-MR2, M3 and involutivity for a group with actions ``lam[a, b] = ^a b``, ``rho[b, a] = a^b``."""
    m = len(mul)
    parts = []
    idx = np.arange(m)

    def pairwise(check, fn, salt):
        with timed() as t:
            res = _scan.scan(m, 2, fn, policy, salt)
        parts.append(_scan.report(name, check, res, label, t["elapsed"]))

    def triple(check, fn, salt):
        with timed() as t:
            res = _scan.scan(m, 3, fn, policy, salt)
        parts.append(_scan.report(name, check, res, label, t["elapsed"]))

    bad = np.flatnonzero((lam[idx, one] != one) | (lam[one, idx] != idx))
    parts.append(CheckReport(name, "ML0", "fail" if len(bad) else "pass",
                             witnesses=[(label(bad[0]),)] if len(bad) else []))
    bad = np.flatnonzero((rho[idx, one] != one) | (rho[one, idx] != idx))
    parts.append(CheckReport(name, "MR0", "fail" if len(bad) else "pass",
                             witnesses=[(label(bad[0]),)] if len(bad) else []))
    triple("ML1", lambda a, b, u: lam[mul[a, b], u] == lam[a, lam[b, u]], 71)
    triple("MR1", lambda a, u, v: rho[mul[u, v], a] == rho[v, rho[u, a]], 72)
    triple("ML2", lambda a, u, v: lam[a, mul[u, v]] == mul[lam[a, u], lam[rho[u, a], v]], 73)
    triple("MR2", lambda a, b, u: rho[u, mul[a, b]] == mul[rho[lam[b, u], a], rho[u, b]], 74)
    pairwise("M3", lambda u, v: mul[u, v] == mul[lam[u, v], rho[v, u]], 75)
    pairwise("involutive", lambda x, y: (lam[lam[x, y], rho[y, x]] == x) & (rho[rho[y, x], lam[x, y]] == y), 76)
    return CheckReport.combine(name, "braided_group", parts)


def brace_to_symmetric_group(b: FiniteBrace, verify: bool = True) -> FiniteSolution:
    """The solution ``r(a, b) = (^a b, a^b)`` on the elements of ``b``."""
    b.require()
    s = FiniteSolution(b.left, b.right.T, name=f"r[{b.name}]")
    if verify:
        rep = CheckReport.combine(s.name, "symmetric_group", [
            validate_solution(s, b.policy),
            braided_group_report(b.mul, s.lam, s.rho, b.one, s.name, b.policy, b.label),
        ])
        if not rep.passed:
            raise InvariantError(f"{b.name}: derived braiding is not a symmetric group", witness=rep.witness)
    return s


def symmetric_group_to_brace(mul, lam, names=None, name="group", policy=_scan.DEFAULT_POLICY) -> FiniteBrace:
    """Brace of a symmetric group: ``a + b = a . ^(a^-1) b``.

    ``mul`` is the group table and ``lam[a, b] = ^a b``; the right action is
    derived and every braided-group axiom is verified first.
    """
    mul = _table(mul, what="mul")
    lam = _table(lam, len(mul), what="lambda")
    one = _neutral(mul)
    if one is None:
        raise AxiomError("group_identity", ())
    inv = _inverses(mul, one)
    if inv is None:
        raise AxiomError("group_inverses", ())
    res = _scan.kernel_scan(kernels.assoc, (mul,), len(mul), policy)
    if not res.ok:
        raise AxiomError("group_associative", res.witness)
    idx = np.arange(len(mul))
    rho_t = lam[inv[lam], idx[:, None]]  # rho_t[a, b] = a^b
    rho = np.ascontiguousarray(rho_t.T)
    rep = braided_group_report(mul, lam, rho, one, name, policy)
    for p in rep.parts:
        if p.failed:
            raise AxiomError(p.check, p.witness)
    add = mul[idx[:, None], lam[inv[:, None], idx[None, :]]]
    b = FiniteBrace(add, mul, names, name=name, policy=policy)
    vrep = validate_brace(b)
    if not vrep.counts["is_left_brace"]:
        failing = next(p for p in vrep.parts if p.failed)
        raise AxiomError(failing.check, failing.witness)
    return b


def trivial_brace(m: int) -> FiniteBrace:
    """Z_m with a.b = a + b."""
    idx = np.arange(m)
    add = (idx[:, None] + idx[None, :]) % m
    return FiniteBrace(add, add, name=f"trivial:{m}")
