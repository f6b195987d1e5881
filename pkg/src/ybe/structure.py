"""The structure group G(X, r) inside Z^X x| Sym(X), bounded balls and the finite image of L.

An element is a pair ``(vec, perm)``; the product is
``(a, f)(b, g) = (a + f.b, fg)`` where ``(f.b)[f(i)] = b[i]``.  Generators
are ``x -> (e_x, lam_x)``.  The vec coordinate is the additive group of the
structure brace, so it determines the element; perm is ``L(a)``.

Since the relations are homogeneous, word length over generators and their
inverses equals the l1-norm of vec, and every action preserves that norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _scan
from .brace import FiniteBrace, symmetric_group_to_brace
from .errors import InvariantError, RadiusExhaustedError, RefusedError
from .report import CheckReport, timed
from .solution import FiniteSolution, is_multipermutation, mpl, validate_solution

MEMORY_CAP = 10**6
DENSE_LOOKUP = 1 << 24
BALL_CONDITIONS = ("lri", "cl1", "cl2", "cr1", "cr2", "raut", "L_const", "inverse_action")
BALL_AXIOMS = ("ML1", "MR1", "ML2", "MR2", "M3")
LIFT_SAMPLES = 10
_SALTS = {w: 200 + i for i, w in enumerate(BALL_CONDITIONS + BALL_AXIOMS)}


def _act(perms, vecs):
    """Row-wise ``f.v`` with ``(f.v)[f(i)] = v[i]``."""
    perms = np.atleast_2d(perms)
    vecs = np.atleast_2d(vecs)
    out = np.empty(np.broadcast_shapes(perms.shape, vecs.shape), dtype=np.int64)
    rows = np.arange(len(out))[:, None]
    out[rows, np.broadcast_to(perms, out.shape)] = np.broadcast_to(vecs, out.shape)
    return out


def _inverse_perms(perms):
    perms = np.atleast_2d(perms)
    out = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    out[rows, perms] = np.arange(perms.shape[1])
    return out


def _compose(f, g):
    """Row-wise ``f o g``."""
    return np.take_along_axis(np.atleast_2d(f), np.atleast_2d(g), axis=1)


@dataclass(frozen=True)
class StructureElement:
    vec: tuple
    perm: tuple

    def __mul__(self, other: "StructureElement") -> "StructureElement":
        a, f = np.array(self.vec), np.array(self.perm)
        b, g = np.array(other.vec), np.array(other.perm)
        return StructureElement(tuple((a + _act(f, b)[0]).tolist()), tuple(f[g].tolist()))

    def inverse(self) -> "StructureElement":
        a, f = np.array(self.vec), np.array(self.perm)
        fi = np.argsort(f)
        return StructureElement(tuple((-_act(fi, a)[0]).tolist()), tuple(fi.tolist()))

    @property
    def length(self) -> int:
        return int(np.abs(self.vec).sum())

    def is_identity(self) -> bool:
        return not any(self.vec)

    @classmethod
    def identity(cls, n: int) -> "StructureElement":
        return cls((0,) * n, tuple(range(n)))


def generators(s: FiniteSolution) -> list[StructureElement]:
    n = s.n
    return [StructureElement(tuple(int(i == x) for i in range(n)), tuple(s.lam[x].tolist())) for x in range(n)]


def embed_and_verify(s: FiniteSolution) -> list[StructureElement]:
    """Generators, after checking every defining relation ``x y = (^x y)(x^y)``."""
    gens = generators(s)
    for x in range(s.n):
        for y in range(s.n):
            u, v = s.r(x, y)
            if gens[x] * gens[y] != gens[u] * gens[v]:
                raise InvariantError(f"{s.name}: defining relation fails", witness=(x + 1, y + 1))
    return gens


# ---------------------------------------------------------------- cocycle resolution


def _preimage_of_self(s: FiniteSolution) -> np.ndarray:
    """``z_of[y]`` = the z with ``lam_z(y) = z``."""
    out = np.full(s.n, -1, dtype=np.int64)
    for z in range(s.n):
        out[int(np.flatnonzero(s.lam[z] == z)[0])] = z
    if (out < 0).any():
        raise InvariantError(f"{s.name}: x -> lam_x^-1(x) is not a bijection")
    return out


def resolve_perms(s: FiniteSolution, vecs) -> np.ndarray:
    """``L`` of the elements with the given vec coordinates.

    Peels one generator (or inverse generator) off the left per step:
    ``v = e_x + lam_x.w`` gives ``L = lam_x L(w)``, and a vec with only
    nonpositive entries is handled by ``z^-1`` where ``lam_z(y) = z``.
    """
    n = s.n
    V = np.array(np.atleast_2d(vecs), dtype=np.int64)
    k = len(V)
    acc = np.tile(np.arange(n), (k, 1))
    lam = s.lam.astype(np.int64)
    lam_inv = _inverse_perms(lam)
    z_of = _preimage_of_self(s)
    E = np.eye(n, dtype=np.int64)
    while True:
        live = np.flatnonzero(V.any(axis=1))
        if not len(live):
            return acc
        pos = V[live] > 0
        has_pos = pos.any(axis=1)
        p_rows = live[has_pos]
        if len(p_rows):
            x = np.argmax(V[p_rows] > 0, axis=1)
            acc[p_rows] = _compose(acc[p_rows], lam[x])
            V[p_rows] = _act(lam_inv[x], V[p_rows] - E[x])
        n_rows = live[~has_pos]
        if len(n_rows):
            y = np.argmax(V[n_rows] < 0, axis=1)
            z = z_of[y]
            acc[n_rows] = _compose(acc[n_rows], lam_inv[z])
            V[n_rows] = _act(lam[z], V[n_rows]) + E[z]


def element(s: FiniteSolution, vec) -> StructureElement:
    perm = resolve_perms(s, vec)[0]
    return StructureElement(tuple(int(v) for v in vec), tuple(perm.tolist()))


def word_element(s: FiniteSolution, word) -> StructureElement:
    """Product of generators along a word of signed 1-based letters (``-x`` is the inverse)."""
    gens = generators(s)
    out = StructureElement.identity(s.n)
    for letter in word:
        g = gens[abs(letter) - 1]
        out = out * (g if letter > 0 else g.inverse())
    return out


# ---------------------------------------------------------------- balls


class Ball:
    """Elements of word length <= radius, found by BFS, with witness words."""

    def __init__(self, s: FiniteSolution, radius: int, vecs, perms, depth, parent, letter):
        self.solution = s
        self.radius = radius
        self.vecs = vecs
        self.perms = perms
        self.inv_perms = _inverse_perms(perms) if len(perms) else perms
        self.depth = depth
        self.parent = parent
        self.letter = letter
        self._base = 2 * radius + 1
        self._weights = self._base ** np.arange(perms.shape[1] if perms.ndim == 2 else 0, dtype=np.int64)
        self._shift = int(radius * self._weights.sum())
        self._keys = self._key(vecs)
        self._order = np.argsort(self._keys, kind="stable")
        self._sorted = self._keys[self._order]
        self._dense = None
        span = self._base ** vecs.shape[1] if len(vecs) else 0
        if span <= DENSE_LOOKUP:
            self._dense = np.full(span + 1, -1, dtype=np.int64)  # last slot: outside
            self._dense[self._keys] = np.arange(len(vecs))

    def _key(self, vecs):
        vecs = np.atleast_2d(vecs)
        out = vecs @ self._weights + self._shift
        if len(vecs) and (vecs.max() > self.radius or vecs.min() < -self.radius):
            out[(np.abs(vecs) > self.radius).any(axis=1)] = -1
        return out

    def __len__(self):
        return len(self.vecs)

    def lookup(self, vecs) -> np.ndarray:
        """Indices of the given vecs, -1 where outside the ball."""
        keys = self._key(vecs)
        if self._dense is not None:
            return self._dense[keys]
        pos = np.searchsorted(self._sorted, keys)
        pos = np.minimum(pos, len(self._sorted) - 1)
        hit = (self._sorted[pos] == keys) & (keys >= 0)
        return np.where(hit, self._order[pos], -1)

    def within(self, radius: int) -> np.ndarray:
        return np.flatnonzero(self.depth <= radius)

    def word(self, i: int) -> list[int]:
        out = []
        while self.parent[i] >= 0:
            out.append(int(self.letter[i]))
            i = int(self.parent[i])
        return out[::-1]

    def label(self, i: int) -> str:
        w = self.word(int(i))
        if not w:
            return "e"
        return "*".join(f"x{abs(a)}" + ("^-1" if a < 0 else "") for a in w)

    def element(self, i: int) -> StructureElement:
        return StructureElement(tuple(self.vecs[i].tolist()), tuple(self.perms[i].tolist()))

    def index(self, e: StructureElement) -> int:
        i = int(self.lookup(np.array([e.vec]))[0])
        if i < 0:
            raise RadiusExhaustedError(f"{e.vec} lies outside the radius-{self.radius} ball", self.radius)
        return i

    def to_json(self) -> list[dict]:
        return [{"vec": self.vecs[i].tolist(), "perm": (self.perms[i] + 1).tolist(), "witness": self.word(i)}
                for i in range(len(self))]

    # vectorised group operations on index arrays; -1 propagates

    def _lk(self, vecs, *deps):
        out = self.lookup(vecs)
        for d in deps:
            out = np.where(d < 0, -1, out)
        return out

    def _act(self, a, vecs):
        # (f.v)[j] = v[f^-1(j)]
        return np.take_along_axis(vecs, self.inv_perms[a], axis=1)

    def _act_inv(self, a, vecs):
        return np.take_along_axis(vecs, self.perms[a], axis=1)

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        v = self.vecs[a] + self._act(a, self.vecs[b])
        return self._lk(v, a, b)

    def inv(self, a):
        a = np.asarray(a)
        return self._lk(-self._act_inv(a, self.vecs[a]), a)

    def left(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return self._lk(self._act(a, self.vecs[b]), a, b)

    def right(self, a, b):
        """``a^b = ^((^a b)^-1) a``."""
        a, b = np.asarray(a), np.asarray(b)
        c = self.left(a, b)
        return self._lk(self._act_inv(c, self.vecs[a]), a, c)

    def add(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return self._lk(self.vecs[a] + self.vecs[b], a, b)


def _layer_keys(vecs, R):
    w = (2 * R + 1) ** np.arange(vecs.shape[1], dtype=np.int64)
    return ((vecs + R) * w).sum(axis=1)


def ball(s: FiniteSolution, L: int, cap: int = MEMORY_CAP) -> Ball:
    """BFS over words in generators and inverses of length <= L, deduplicated by vec."""
    if L < 0:
        raise ValueError("radius must be >= 0")
    n = s.n
    if (2 * L + 1) ** n >= 2**62:
        raise RefusedError(f"radius {L} on {n} generators overflows the vec key", {"radius": L, "n": n})
    lam = s.lam.astype(np.int64)
    lam_inv = _inverse_perms(lam)
    # letter x: (e_x, lam_x); letter -x: (-e_{lam_x^-1(x)}, lam_x^-1)
    step_src = [(x, lam[x], +1, x + 1) for x in range(n)]
    step_src += [(int(lam_inv[x, x]), lam_inv[x], -1, -(x + 1)) for x in range(n)]
    vecs = [np.zeros((1, n), dtype=np.int64)]
    perms = [np.arange(n, dtype=np.int64)[None, :]]
    depth = [np.zeros(1, dtype=np.int64)]
    parent = [np.full(1, -1, dtype=np.int64)]
    letter = [np.zeros(1, dtype=np.int64)]
    seen_keys = _layer_keys(vecs[0], L)
    seen_perm = perms[0]
    total = 1
    fv, fp, fi = vecs[0], perms[0], np.zeros(1, dtype=np.int64)
    for d in range(1, L + 1):
        cand_v, cand_p, cand_par, cand_let = [], [], [], []
        rows = np.arange(len(fv))
        for y, g, sign, let in step_src:
            # (v, f)(+-e_y, g) = (v +- e_{f(y)}, f g)
            v = fv.copy()
            v[rows, fp[:, y]] += sign
            cand_v.append(v)
            cand_p.append(fp[:, g])
            cand_par.append(fi)
            cand_let.append(np.full(len(fv), let, dtype=np.int64))
        cv = np.concatenate(cand_v)
        cp = np.concatenate(cand_p)
        cpar = np.concatenate(cand_par)
        clet = np.concatenate(cand_let)
        keys = _layer_keys(cv, L)
        # collisions with earlier layers
        order = np.argsort(seen_keys)
        pos = np.minimum(np.searchsorted(seen_keys[order], keys), len(order) - 1)
        old = seen_keys[order][pos] == keys
        if old.any():
            j = np.flatnonzero(old)
            bad = (seen_perm[order[pos[j]]] != cp[j]).any(axis=1)
            if bad.any():
                raise InvariantError(f"{s.name}: vec {cv[j[bad][0]].tolist()} reached with two perms",
                                     witness=tuple(cv[j[bad][0]].tolist()))
        new = np.flatnonzero(~old)
        uk, first, inv = np.unique(keys[new], return_index=True, return_inverse=True)
        inv = np.asarray(inv).ravel()
        reps = new[first]
        if ((cp[new] != cp[reps][inv]).any(axis=1)).any():
            k = new[np.flatnonzero((cp[new] != cp[reps][inv]).any(axis=1))[0]]
            raise InvariantError(f"{s.name}: vec {cv[k].tolist()} reached with two perms",
                                 witness=tuple(cv[k].tolist()))
        total += len(reps)
        if total > cap:
            raise RefusedError(f"ball exceeds memory cap {cap} at radius {d}",
                               {"radius_reached": d - 1, "cap": cap})
        fv, fp = cv[reps], cp[reps]
        fi = np.arange(total - len(reps), total, dtype=np.int64)
        vecs.append(fv)
        perms.append(fp)
        depth.append(np.full(len(reps), d, dtype=np.int64))
        parent.append(cpar[reps])
        letter.append(clet[reps])
        seen_keys = np.concatenate([seen_keys, uk])
        seen_perm = np.concatenate([seen_perm, fp])
        if not len(reps):
            break
    return Ball(s, L, np.concatenate(vecs), np.concatenate(perms), np.concatenate(depth),
                np.concatenate(parent), np.concatenate(letter))


def actions(a: StructureElement, b: StructureElement, s: FiniteSolution | None = None,
            ball_: Ball | None = None) -> tuple[StructureElement, StructureElement]:
    """``(^a b, a^b)``; perms come from the ball when given, else from the cocycle."""
    f = np.array(a.perm)
    v = _act(f, np.array(b.vec))[0]

    def resolve(vec):
        if ball_ is not None:
            i = int(ball_.lookup(vec[None, :])[0])
            if i < 0:
                raise RadiusExhaustedError(f"{vec.tolist()} is outside the radius-{ball_.radius} ball",
                                           ball_.radius)
            return ball_.element(i)
        if s is None:
            raise ValueError("need a solution or a ball to resolve perms")
        return element(s, vec)

    ab = resolve(v)
    w = _act(np.argsort(ab.perm), np.array(a.vec))[0]
    return ab, resolve(w)


# ---------------------------------------------------------------- conditions on a ball


def _ball_predicate(B: Ball, which: str):
    if which == "lri":
        def fn(a, b):
            c = B.right(B.left(a, b), a)
            d = B.left(a, B.right(b, a))
            return c, d, (c == b) & (d == b)
        return 2, fn
    if which == "cl1":
        def fn(a, b):
            c, d = B.left(B.right(a, b), b), B.left(a, b)
            return c, d, c == d
        return 2, fn
    if which == "cl2":
        def fn(a, b):
            c, d = B.left(B.left(b, a), b), B.left(a, b)
            return c, d, c == d
        return 2, fn
    if which == "cr1":
        def fn(a, b):
            c, d = B.right(a, B.left(a, b)), B.right(a, b)
            return c, d, c == d
        return 2, fn
    if which == "cr2":
        def fn(a, b):
            c, d = B.right(a, B.right(b, a)), B.right(a, b)
            return c, d, c == d
        return 2, fn
    if which == "L_const":
        def fn(a, b):
            c = B.right(a, b)
            ok = np.zeros(len(c), dtype=bool)
            live = c >= 0
            ok[live] = (B.perms[c[live]] == B.perms[np.asarray(a)[live]]).all(axis=1)
            return c, c, ok
        return 2, fn
    if which == "inverse_action":
        def fn(a, b):
            c, d = B.left(a, B.inv(b)), B.inv(B.left(a, b))
            return c, d, c == d
        return 2, fn
    if which == "raut":
        def fn(a, b, c):
            lhs = B.right(B.add(a, b), c)
            ac, bc = B.right(a, c), B.right(b, c)
            ok = np.zeros(len(lhs), dtype=bool)
            live = (lhs >= 0) & (ac >= 0) & (bc >= 0)
            ok[live] = (B.vecs[lhs[live]] == B.vecs[ac[live]] + B.vecs[bc[live]]).all(axis=1)
            return lhs, np.where(live, 0, -1), ok
        return 3, fn
    if which == "ML1":
        def fn(a, b, u):
            c, d = B.left(B.mul(a, b), u), B.left(a, B.left(b, u))
            return c, d, c == d
        return 3, fn
    if which == "MR1":
        def fn(a, u, v):
            c, d = B.right(a, B.mul(u, v)), B.right(B.right(a, u), v)
            return c, d, c == d
        return 3, fn
    if which == "ML2":
        def fn(a, u, v):
            c = B.left(a, B.mul(u, v))
            d = B.mul(B.left(a, u), B.left(B.right(a, u), v))
            return c, d, c == d
        return 3, fn
    if which == "MR2":
        def fn(a, b, u):
            c = B.right(B.mul(a, b), u)
            d = B.mul(B.right(a, B.left(b, u)), B.right(b, u))
            return c, d, c == d
        return 3, fn
    if which == "M3":
        def fn(a, b):
            c, d = B.mul(a, b), B.mul(B.left(a, b), B.right(a, b))
            return c, d, c == d
        return 2, fn
    raise ValueError(f"unknown ball check {which!r}")


def _needs_double(which):
    return which in ("raut",) + BALL_AXIOMS


def check_ball_condition(B: Ball, L: int, which: str, policy: _scan.ScanPolicy = _scan.DEFAULT_POLICY,
                         subject: str | None = None) -> CheckReport:
    """Scan one identity over all pairs/triples of elements of word length <= L in ``B``."""
    arity, fn = _ball_predicate(B, which)
    members = B.within(L)
    m = len(members)
    unresolved = [0]

    def ok_fn(*cols):
        c, d, ok = fn(*(members[col] for col in cols))
        missing = (np.asarray(c) < 0) | (np.asarray(d) < 0)
        unresolved[0] += int(missing.sum())
        return ok | missing

    with timed() as t:
        res = _scan.scan(m, arity, ok_fn, policy, salt=_SALTS.get(which, 0))
    rep = _scan.report(subject or B.solution.name, which, res, lambda i: B.label(members[i]), t["elapsed"])
    rep.counts["radius"] = L
    rep.counts["ball_size"] = m
    if unresolved[0]:
        rep.counts["unresolved"] = unresolved[0]
        if rep.passed:
            rep = CheckReport(rep.subject, which, "incomplete", counts=rep.counts, seed=rep.seed,
                              bound={"radius": L, "lookup_radius": B.radius}, elapsed=rep.elapsed)
    rep.notes.append(f"radius {L}: a pass covers this ball only")
    return rep


def check_on_ball(s: FiniteSolution, L: int, which=BALL_CONDITIONS,
                  policy: _scan.ScanPolicy = _scan.DEFAULT_POLICY, cap: int = MEMORY_CAP) -> CheckReport:
    """Identities over the radius-L ball; raut and the axioms look up sums/products at radius 2L."""
    if isinstance(which, str):
        which = (which,)
    if L < 1:
        raise ValueError("radius must be >= 1")
    R = 2 * L if any(_needs_double(w) for w in which) else L
    B = ball(s, R, cap)
    parts = [check_ball_condition(B, L, w, policy) for w in which]
    rep = CheckReport.combine(s.name, f"ball[L={L}]", parts)
    rep.counts["radius"] = L
    return rep


# ---------------------------------------------------------------- the finite group L(G)


@dataclass
class PermutationGroupData:
    perms: np.ndarray  # (k, n) elements of L(G), identity first
    words: list  # positive generator words (1-based) with L(word) = perms[i]
    mul: np.ndarray  # mul[i, j] = index of perms[i] o perms[j]
    lam: np.ndarray  # induced ^s t
    rho: np.ndarray  # rho[t, s] = s^t
    solution: FiniteSolution
    brace: FiniteBrace
    mpl: int | None
    lift_checks: int
    seed: int

    @property
    def order(self) -> int:
        return len(self.perms)


def _closure(s: FiniteSolution, max_order: int):
    n = s.n
    ident = tuple(range(n))
    index = {ident: 0}
    perms = [ident]
    words = [[]]
    frontier = [0]
    lam = [tuple(int(v) for v in s.lam[x]) for x in range(n)]
    while frontier:
        nxt = []
        for i in frontier:
            f = perms[i]
            for x in range(n):
                g = tuple(f[j] for j in lam[x])
                if g not in index:
                    index[g] = len(perms)
                    perms.append(g)
                    words.append(words[i] + [x + 1])
                    nxt.append(index[g])
                    if len(perms) > max_order:
                        raise RefusedError(f"L(G) has more than {max_order} elements", {"max_order": max_order})
        frontier = nxt
    return np.array(perms, dtype=np.int64), words, index


def _lift_vecs(s, words):
    out = np.zeros((len(words), s.n), dtype=np.int64)
    for i, w in enumerate(words):
        out[i] = np.array(word_element(s, w).vec)
    return out


def permutation_group(s: FiniteSolution, seed: int = 0, samples: int = LIFT_SAMPLES,
                      max_order: int = 5040) -> PermutationGroupData:
    """L(G) with its induced braiding, solution and brace.

    ``^s t = L(^a b)`` for lifts a, b of s, t.  Lift independence is
    spot-checked on ``samples`` alternative lifts per entry: ``a z`` and
    ``b z'`` with z, z' random kernel elements of L.
    """
    perms, words, index = _closure(s, max_order)
    k, n = perms.shape
    keys = {tuple(p.tolist()): i for i, p in enumerate(perms)}

    def idx_of(P):
        try:
            return np.array([keys[tuple(r)] for r in P.tolist()], dtype=np.int64)
        except KeyError as e:
            raise InvariantError(f"{s.name}: permutation outside L(G)", witness=e.args) from None

    mul = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        mul[i] = idx_of(perms[i][perms])
    lifts = _lift_vecs(s, words)

    def induced(A_vec, A_perm, B_vec):
        """Indices of L(^a b) and L(a^b) for lifted rows."""
        ab = _act(A_perm, B_vec)
        ab_perm = resolve_perms(s, ab)
        w = _act(_inverse_perms(ab_perm), A_vec)
        return idx_of(ab_perm), idx_of(resolve_perms(s, w))

    I, J = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    I, J = I.ravel(), J.ravel()
    L_idx, R_idx = induced(lifts[I], perms[I], lifts[J])
    lam = L_idx.reshape(k, k)
    right = R_idx.reshape(k, k)  # right[i, j] = s_i ^ s_j
    rng = np.random.default_rng([seed, 7])
    checks = 0
    def kernel_samples():
        # u * (lift of L(u)^-1) for a random word u
        zs = np.zeros((k * k, n), dtype=np.int64)
        for r in range(k * k):
            size = int(rng.integers(1, 5))
            letters = rng.integers(1, n + 1, size=size) * rng.choice([-1, 1], size=size)
            u = word_element(s, letters.tolist())
            z = u * word_element(s, words[keys[tuple(np.argsort(u.perm).tolist())]])
            if z.perm != tuple(range(n)):
                raise InvariantError(f"{s.name}: kernel sample has nontrivial L", witness=z.vec)
            zs[r] = z.vec
        return zs

    for _ in range(samples):
        za, zb = kernel_samples(), kernel_samples()
        A_vec = lifts[I] + _act(perms[I], za)  # a z
        B_vec = lifts[J] + _act(perms[J], zb)
        L2, R2 = induced(A_vec, perms[I], B_vec)
        bad = np.flatnonzero((L2 != L_idx) | (R2 != R_idx))
        if len(bad):
            r = bad[0]
            raise InvariantError(f"{s.name}: induced action depends on the lift",
                                 witness=(words[I[r]], words[J[r]]))
        checks += k * k
    rho = np.ascontiguousarray(right.T)
    sol = FiniteSolution(lam.astype(np.int32), rho.astype(np.int32), name=f"L({s.name})")
    rep = validate_solution(sol)
    if not rep.passed:
        raise InvariantError(f"{s.name}: induced braiding on L(G) is not a solution", witness=rep.witness)
    names = ["e" if not w else "L(" + "".join(f"x{x}" for x in w) + ")" for w in words]
    brace = symmetric_group_to_brace(mul, lam, names=names, name=f"brace[L({s.name})]")
    level = mpl(sol) if is_multipermutation(sol) else None
    return PermutationGroupData(perms, words, mul, lam, rho, sol, brace, level, checks, seed)


def l1_ball_size(n: int, L: int) -> int:
    """Number of integer vectors in Z^n with l1-norm <= L."""
    from math import comb
    return sum(2**k * comb(n, k) * comb(L, k) for k in range(min(n, L) + 1))
