"""Finite quadratic sets (X, r), the solution axioms, retraction and mpl.

Elements of X are ``0..n-1`` internally and ``1..n`` in files and reports.
``lam[x, y]`` is the left action of x on y and ``rho[y, x]`` is the right
action of y on x, so ``r(x, y) = (lam[x, y], rho[y, x])``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from . import _scan, kernels
from .errors import InvariantError, MalformedTableError, NotAMultipermutationError, RefusedError
from .report import CheckReport, timed

CONDITIONS = ("cl1", "cr1", "cl2", "cr2", "lri", "square_free")
ENUMERATION_BOUND = 4


def _as_table(t, n=None, what="table"):
    a = np.asarray(t)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise MalformedTableError(f"{what} must be a non-empty square table, got shape {a.shape}")
    if n is not None and a.shape[0] != n:
        raise MalformedTableError(f"{what} has size {a.shape[0]}, expected {n}")
    if not np.issubdtype(a.dtype, np.integer):
        raise MalformedTableError(f"{what} must hold integers")
    if a.min() < 0 or a.max() >= a.shape[0]:
        raise MalformedTableError(f"{what} has an entry outside 0..{a.shape[0] - 1}")
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.setflags(write=False)
    return a


def _is_perm_rows(t):
    n = t.shape[1]
    s = np.sort(t, axis=1)
    return (s == np.arange(n)).all(axis=1)


def derive_rho(lam: np.ndarray) -> np.ndarray:
    """Right action forced by involutivity: ``rho[y, x] = lam[lam[x, y]]^-1 (x)``."""
    lam = np.asarray(lam)
    n = len(lam)
    bad = np.flatnonzero(~_is_perm_rows(lam))
    if len(bad):
        raise MalformedTableError(f"cannot derive rho: lambda row {bad[0] + 1} is not a permutation")
    inv = np.argsort(lam, axis=1)
    x = np.arange(n)[:, None]
    rho_xy = inv[lam, x]  # rho_xy[x, y] = lam^-1_{lam[x,y]}(x)
    return rho_xy.T.copy()


@dataclass(frozen=True, eq=False)
class FiniteSolution:
    lam: np.ndarray
    rho: np.ndarray = None
    name: str = "solution"
    rho_derived: bool = field(default=False)

    def __post_init__(self):
        lam = _as_table(self.lam, what="lambda")
        object.__setattr__(self, "lam", lam)
        if self.rho is None:
            object.__setattr__(self, "rho", _as_table(derive_rho(lam), what="rho"))
            object.__setattr__(self, "rho_derived", True)
        else:
            object.__setattr__(self, "rho", _as_table(self.rho, len(lam), what="rho"))

    @property
    def n(self) -> int:
        return len(self.lam)

    def r(self, x: int, y: int) -> tuple[int, int]:
        return int(self.lam[x, y]), int(self.rho[y, x])

    def key(self) -> bytes:
        return self.lam.tobytes() + self.rho.tobytes()

    def __eq__(self, other):
        return isinstance(other, FiniteSolution) and self.n == other.n and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FiniteSolution(name={self.name!r}, n={self.n})"

    def relabel(self, perm) -> "FiniteSolution":
        """Transport the structure along the bijection ``x -> perm[x]``."""
        p = np.asarray(perm)
        q = np.argsort(p)
        lam = p[self.lam[np.ix_(q, q)]]
        rho = p[self.rho[np.ix_(q, q)]]
        return FiniteSolution(lam, rho, name=self.name)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lambda": (self.lam + 1).tolist(),
            "rho": (self.rho + 1).tolist(),
        }


def validate_solution(s: FiniteSolution, policy: _scan.ScanPolicy = _scan.DEFAULT_POLICY) -> CheckReport:
    """Non-degeneracy, involutivity and the braid relation, each with a witness."""
    n = s.n
    lam, rho = s.lam, s.rho
    parts = []
    with timed() as t:
        bad_l = np.flatnonzero(~_is_perm_rows(lam))
        bad_r = np.flatnonzero(~_is_perm_rows(rho))
        if len(bad_l):
            w = [("lambda", int(bad_l[0]) + 1)]
        elif len(bad_r):
            w = [("rho", int(bad_r[0]) + 1)]
        else:
            w = []
    parts.append(CheckReport(s.name, "non_degenerate", "fail" if w else "pass", witnesses=w,
                             counts={"scanned": 2 * n}, elapsed=t["elapsed"]))
    with timed() as t:
        res = _scan.scan(n, 2, lambda x, y: _involutive_ok(lam, rho, x, y), policy)
    parts.append(_scan.report(s.name, "involutive", res, elapsed=t["elapsed"]))
    with timed() as t:
        res = _scan.kernel_scan(kernels.braid, (lam, rho), n, policy)
    parts.append(_scan.report(s.name, "braid", res, elapsed=t["elapsed"]))
    notes = ["rho derived from lambda by involutivity"] if s.rho_derived else []
    return CheckReport.combine(s.name, "validate_solution", parts, notes=notes)


def _involutive_ok(lam, rho, x, y):
    u = lam[x, y]
    v = rho[y, x]
    return (lam[u, v] == x) & (rho[v, u] == y)


def is_solution(s: FiniteSolution) -> bool:
    return validate_solution(s).passed


def _condition_ok(lam, rho, which):
    # rho[a, b] is b^a (row = acting element)
    if which == "cl1":
        return lambda x, y: lam[rho[x, y], x] == lam[y, x]
    if which == "cr1":
        return lambda x, y: rho[lam[x, y], x] == rho[y, x]
    if which == "cl2":
        return lambda x, y: lam[lam[x, y], x] == lam[y, x]
    if which == "cr2":
        return lambda x, y: rho[rho[x, y], x] == rho[y, x]
    if which == "lri":
        return lambda x, y: (rho[x, lam[x, y]] == y) & (lam[x, rho[x, y]] == y)
    if which == "square_free":
        return lambda x, y: (lam[x, x] == x) & (rho[x, x] == x) | (x != y)
    raise ValueError(f"unknown condition {which!r}")


def check_conditions(s: FiniteSolution, which=CONDITIONS) -> CheckReport:
    """Cyclic conditions, lri and square-freeness on X, with witness pairs."""
    if isinstance(which, str):
        which = (which,)
    parts = []
    for name in which:
        fn = _condition_ok(s.lam, s.rho, name)
        with timed() as t:
            res = _scan.scan(s.n, 2, fn)
        parts.append(_scan.report(s.name, name, res, elapsed=t["elapsed"]))
    return CheckReport.combine(s.name, "conditions", parts)


def is_trivial(s: FiniteSolution) -> bool:
    return bool((s.lam == np.arange(s.n)).all())


@dataclass(frozen=True)
class RetractionStep:
    classes: list
    induced: FiniteSolution
    class_of: np.ndarray


def retract(s: FiniteSolution) -> RetractionStep:
    """Quotient of X by equality of lambda-rows, with the induced solution."""
    _, first, class_of = np.unique(s.lam, axis=0, return_index=True, return_inverse=True)
    class_of = np.asarray(class_of).ravel()
    # renumber classes by first occurrence
    order = np.argsort(first)
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    class_of = rank[class_of]
    k = len(order)
    reps = np.sort(first)
    classes = [np.flatnonzero(class_of == c).tolist() for c in range(k)]
    lam_i = class_of[s.lam[np.ix_(reps, reps)]]
    rho_i = class_of[s.rho[np.ix_(reps, reps)]]
    for name, full, ind in (("lambda", s.lam, lam_i), ("rho", s.rho, rho_i)):
        mapped = class_of[full]
        expect = ind[np.ix_(class_of, class_of)]
        bad = np.argwhere(mapped != expect)
        if len(bad):
            x, y = (int(v) + 1 for v in bad[0])
            raise InvariantError(f"induced {name} is not well defined on classes", witness=(x, y))
    induced = FiniteSolution(lam_i, rho_i, name=f"Ret({s.name})")
    rep = validate_solution(induced)
    if not rep.passed:
        raise InvariantError(f"retraction of {s.name} is not a solution", witness=rep.witness)
    return RetractionStep(classes, induced, class_of)


def retraction_chain(s: FiniteSolution) -> list[FiniteSolution]:
    chain = [s]
    while chain[-1].n > 1:
        nxt = retract(chain[-1]).induced
        if nxt.n == chain[-1].n:
            break
        chain.append(nxt)
    return chain


def mpl(s: FiniteSolution) -> int:
    """Least m with |Ret^m(X)| = 1; 0 for a singleton."""
    chain = retraction_chain(s)
    if chain[-1].n > 1:
        raise NotAMultipermutationError(
            f"{s.name} is not a multipermutation solution: retraction stabilises at "
            f"{chain[-1].n} points",
            [c.n for c in chain],
        )
    return len(chain) - 1


def is_multipermutation(s: FiniteSolution) -> bool:
    return retraction_chain(s)[-1].n == 1


# ---------------------------------------------------------------- generators


def trivial_solution(n: int) -> FiniteSolution:
    idx = np.arange(n)
    lam = np.tile(idx, (n, 1))
    return FiniteSolution(lam, lam.copy(), name=f"trivial:{n}")


def parse_permutation(sigma, n: int) -> np.ndarray:
    """0-based image array from cycle notation ``"(1 2 3)"`` / ``[(1, 2, 3)]`` or an image list."""
    img = np.arange(n)
    if isinstance(sigma, str):
        cycles = [tuple(int(v) for v in re.split(r"[\s,]+", c.strip()) if v)
                  for c in re.findall(r"\(([^)]*)\)", sigma)]
    elif len(sigma) and all(isinstance(c, (tuple, list)) for c in sigma):
        cycles = [tuple(c) for c in sigma]
    else:
        img = np.asarray(sigma, dtype=int)
        if sorted(img.tolist()) != list(range(n)):
            raise MalformedTableError(f"{sigma!r} is not a permutation of 0..{n - 1}")
        return img
    seen = set()
    for c in cycles:
        for a in c:
            if not 1 <= a <= n or a in seen:
                raise MalformedTableError(f"bad cycle notation {sigma!r} for n={n}")
            seen.add(a)
        for i, a in enumerate(c):
            img[a - 1] = c[(i + 1) % len(c)] - 1
    return img


def format_cycles(img) -> str:
    img = list(img)
    seen, out = set(), []
    for i in range(len(img)):
        if i in seen or img[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = img[j]
        out.append("(" + " ".join(map(str, c)) + ")")
    return "".join(out) or "()"


def permutation_solution(sigma, n: int) -> FiniteSolution:
    """``r(x, y) = (sigma(y), sigma^-1(x))``."""
    img = parse_permutation(sigma, n)
    inv = np.argsort(img)
    lam = np.tile(img, (n, 1))
    rho = np.tile(inv, (n, 1))
    return FiniteSolution(lam, rho, name=f"perm:{n}:{format_cycles(img)}")


def canonical_key(s: FiniteSolution) -> tuple:
    """Lexicographically least (lam, rho) over all relabelings of X."""
    best = None
    for p in itertools.permutations(range(s.n)):
        t = s.relabel(p)
        k = tuple(t.lam.ravel().tolist()) + tuple(t.rho.ravel().tolist())
        if best is None or k < best:
            best = k
    return best


def _from_key(key, n, name):
    a = np.asarray(key, dtype=np.int32)
    return FiniteSolution(a[: n * n].reshape(n, n), a[n * n:].reshape(n, n), name=name)


def enumerate_solutions(n: int) -> list[FiniteSolution]:
    """All solutions on ``n <= 4`` points, one canonical representative per relabeling class."""
    if n > ENUMERATION_BOUND:
        raise RefusedError(f"enumeration refused for n={n} > {ENUMERATION_BOUND}",
                           {"n": n, "max_n": ENUMERATION_BOUND})
    if n < 1:
        raise ValueError("n must be positive")
    perms = [tuple(p) for p in itertools.permutations(range(n))]
    inverse = {p: tuple(np.argsort(p).tolist()) for p in perms}
    keys = set()
    lam: list = [None] * n

    def consistent(k):
        # lambda_x lambda_y = lambda_{x.y} lambda_{x^y}, checked once all four are assigned
        for x in range(k + 1):
            lx = lam[x]
            for y in range(k + 1):
                z = lx[y]
                if z > k:
                    continue
                w = inverse[lam[z]][x]
                if w > k:
                    continue
                ly, lz, lw = lam[y], lam[z], lam[w]
                if any(lx[ly[t]] != lz[lw[t]] for t in range(n)):
                    return False
        return True

    def extend(k):
        if k == n:
            s = FiniteSolution(np.array(lam), name="candidate")
            if validate_solution(s).passed:
                keys.add(canonical_key(s))
            return
        for p in perms:
            lam[k] = p
            if consistent(k):
                extend(k + 1)
        lam[k] = None

    extend(0)
    return [_from_key(k, n, f"census:{n}:{i + 1}") for i, k in enumerate(sorted(keys))]
