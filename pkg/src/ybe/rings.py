"""Graded nilpotent quotients of free algebras over GF(p).

A :class:`RewriteSystem` fixes generators, oriented homogeneous rules and a
degree bound ``max_deg`` (every word longer than that is 0).  Words are
tuples of generator indices; deg-lex compares length first and then letters,
with earlier generators larger (``x > y``).

Ring elements are dicts ``word -> coefficient``.  For bulk work the same
arithmetic runs on coordinate vectors over the normal-form basis through
precomputed structure constants.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._scan import ScanPolicy, DEFAULT_POLICY
from .brace import FiniteBrace
from .errors import InvariantError, MalformedTableError, RefusedError
from .report import CheckReport, timed

DEFAULT_CAP = 2**12


class ConfluenceError(InvariantError):
    pass


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class RingElement:
    """Polynomial in normal form: irreducible word -> nonzero coefficient mod p."""

    __slots__ = ("sys", "coeffs")

    def __init__(self, sys: "RewriteSystem", coeffs=None):
        self.sys = sys
        self.coeffs = {w: c % sys.p for w, c in (coeffs or {}).items() if c % sys.p}

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = (out.get(w, 0) + c) % self.sys.p
        return RingElement(self.sys, out)

    def __neg__(self):
        return RingElement(self.sys, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.sys, {w: c * other for w, c in self.coeffs.items()})
        return self.sys.star(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RingElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def degrees(self) -> set[int]:
        return {len(w) for w in self.coeffs}

    def component(self, i: int) -> "RingElement":
        return RingElement(self.sys, {w: c for w, c in self.coeffs.items() if len(w) == i})

    def min_degree(self) -> int:
        return min(self.degrees()) if self.coeffs else 0

    def __repr__(self):
        return self.sys.format(self)

    __str__ = __repr__


@dataclass
class Rule:
    lhs: tuple
    rhs: dict = field(default_factory=dict)


class RewriteSystem:
    """Fixed homogeneous rewriting system; validated (including confluence) at construction."""

    def __init__(self, p: int, gens, rules, max_deg: int, name: str = "ring", validate: bool = True):
        if not _is_prime(p):
            raise MalformedTableError(f"p={p} is not prime")
        if max_deg < 0:
            raise MalformedTableError("max_deg must be >= 0")
        self.p = p
        self.gens = list(gens)
        self.max_deg = max_deg
        self.name = name
        self.rules: list[Rule] = []
        for lhs, rhs in rules:
            lhs = self._word(lhs)
            rhs = {self._word(w): c % p for w, c in dict(rhs).items() if c % p}
            self.rules.append(Rule(lhs, rhs))
        self._nf_cache: dict = {}
        self.confluence: CheckReport | None = None
        if validate:
            self._check_rules()
            self.confluence = check_confluence(self)
            if not self.confluence.passed:
                raise ConfluenceError(f"{name}: non-resolving overlap", witness=self.confluence.witness)

    # -------- words

    def _word(self, w) -> tuple:
        if isinstance(w, str):
            return self.parse_word(w)
        w = tuple(w)
        if any(not (0 <= g < len(self.gens)) for g in w):
            raise MalformedTableError(f"bad word {w!r}")
        return w

    def parse_word(self, s: str) -> tuple:
        s = s.replace("*", "").replace(" ", "")
        names = sorted(range(len(self.gens)), key=lambda g: -len(self.gens[g]))
        out, i = [], 0
        while i < len(s):
            for g in names:
                if s.startswith(self.gens[g], i):
                    out.append(g)
                    i += len(self.gens[g])
                    break
            else:
                raise MalformedTableError(f"cannot parse word {s!r} over {self.gens}")
        return tuple(out)

    def word_str(self, w: tuple, sep: str = "") -> str:
        return sep.join(self.gens[g] for g in w)

    def deglex_key(self, w: tuple):
        k = len(self.gens)
        return (len(w), tuple(k - 1 - g for g in w))

    def _check_rules(self):
        for r in self.rules:
            if not r.lhs:
                raise MalformedTableError("empty left-hand side")
            for w in r.rhs:
                if len(w) != len(r.lhs):
                    raise MalformedTableError(f"rule {self.word_str(r.lhs)} is not homogeneous")
                if self.deglex_key(w) >= self.deglex_key(r.lhs):
                    raise MalformedTableError(f"rule {self.word_str(r.lhs)} does not decrease in deg-lex")
                if self._reducible_at(w) is not None and len(w) <= self.max_deg:
                    raise MalformedTableError(f"right-hand side word {self.word_str(w)} is reducible")

    def _reducible_at(self, w: tuple):
        """Leftmost position and the largest rule matching there, or None."""
        for i in range(len(w)):
            best = None
            for r in self.rules:
                n = len(r.lhs)
                if w[i:i + n] == r.lhs and (best is None or n > len(best.lhs)):
                    best = r
            if best is not None:
                return i, best
        return None

    # -------- normal form

    def _nf_word(self, w: tuple) -> dict:
        if len(w) > self.max_deg:
            return {}
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        red = self._reducible_at(w)
        if red is None:
            out = {w: 1}
        else:
            i, r = red
            out = {}
            for rw, c in r.rhs.items():
                for v, d in self._nf_word(w[:i] + rw + w[i + len(r.lhs):]).items():
                    out[v] = (out.get(v, 0) + c * d) % self.p
            out = {v: c for v, c in out.items() if c}
        self._nf_cache[w] = out
        return out

    def normal_form(self, poly) -> RingElement:
        """Reduce a word, a ``{word: coef}`` map, a string or a RingElement."""
        if isinstance(poly, RingElement):
            poly = poly.coeffs
        elif isinstance(poly, str):
            poly = self._parse_poly(poly)
        elif isinstance(poly, tuple):
            poly = {poly: 1}
        out: dict = {}
        for w, c in dict(poly).items():
            for v, d in self._nf_word(self._word(w)).items():
                out[v] = (out.get(v, 0) + c * d) % self.p
        return RingElement(self, out)

    def _parse_poly(self, s: str) -> dict:
        s = s.replace(" ", "")
        if s in ("", "0"):
            return {}
        out: dict = {}
        for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.match(r"^(\d+)\*?(.*)$", term)
            coef, word = (int(m.group(1)), m.group(2)) if m else (1, term)
            if sign == "-":
                coef = -coef
            w = self.parse_word(word)
            out[w] = out.get(w, 0) + coef
        return out

    def element(self, s) -> RingElement:
        return self.normal_form(s)

    def format(self, a: RingElement, sep: str = "*") -> str:
        if not a.coeffs:
            return "0"
        terms = []
        for w in sorted(a.coeffs, key=self.deglex_key, reverse=True):
            c = a.coeffs[w]
            ws = self.word_str(w, sep)
            terms.append(ws if c == 1 else f"{c}{sep}{ws}")
        return " + ".join(terms)

    # -------- basis and structure constants

    @cached_property
    def basis(self) -> list[tuple]:
        """Irreducible words of length 1..max_deg: by degree, then largest first."""
        out = []
        layer = [()]
        for d in range(1, self.max_deg + 1):
            nxt = []
            for w in layer:
                for g in range(len(self.gens)):
                    v = w + (g,)
                    if self._reducible_at(v) is None:
                        nxt.append(v)
            nxt.sort(key=self.deglex_key, reverse=True)
            out.extend(nxt)
            layer = nxt
        return out

    @cached_property
    def basis_index(self) -> dict:
        return {w: i for i, w in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def ring_order(self) -> int:
        return self.p**self.dim

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``T[i, j]`` = coordinates of basis_i * basis_j."""
        n = self.dim
        T = np.zeros((n, n, n), dtype=np.int64)
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                for w, c in self._nf_word(u + v).items():
                    T[i, j, self.basis_index[w]] = c
        T.setflags(write=False)
        return T

    def to_vector(self, a: RingElement) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for w, c in a.coeffs.items():
            v[self.basis_index[w]] = c
        return v

    def from_vector(self, v) -> RingElement:
        return RingElement(self, {self.basis[i]: int(c) for i, c in enumerate(v) if c % self.p})

    # -------- arithmetic on elements

    def star(self, a: RingElement, b: RingElement) -> RingElement:
        out: dict = {}
        for u, c in a.coeffs.items():
            for v, d in b.coeffs.items():
                for w, e in self._nf_word(u + v).items():
                    out[w] = (out.get(w, 0) + c * d * e) % self.p
        return RingElement(self, out)

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def __repr__(self):
        return f"RewriteSystem({self.name!r}, p={self.p}, gens={self.gens}, max_deg={self.max_deg})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "gens": list(self.gens),
            "max_deg": self.max_deg,
            "rules": [
                {"lhs": self.word_str(r.lhs),
                 "rhs": [{"word": self.word_str(w), "coef": c} for w, c in r.rhs.items()]}
                for r in self.rules
            ],
        }

    @classmethod
    def from_json(cls, d: dict, name: str = "ring") -> "RewriteSystem":
        probe = cls(d["p"], d["gens"], [], d["max_deg"], validate=False)
        rules = []
        for r in d.get("rules", []):
            rhs = {}
            for t in r.get("rhs", []):
                w = probe.parse_word(t["word"])
                rhs[w] = rhs.get(w, 0) + int(t["coef"])
            rules.append((probe.parse_word(r["lhs"]), rhs))
        return cls(d["p"], d["gens"], rules, d["max_deg"], name=name)


# ---------------------------------------------------------------- confluence


def _one_step(sys, w, i, r) -> RingElement:
    out: dict = {}
    for rw, c in r.rhs.items():
        v = w[:i] + rw + w[i + len(r.lhs):]
        out[v] = (out.get(v, 0) + c) % sys.p
    return sys.normal_form(out)


def check_confluence(sys: RewriteSystem) -> CheckReport:
    """Resolve every overlap and inclusion between rule left-hand sides."""
    with timed() as t:
        witness = None
        count = 0
        rules = sys.rules
        for r1, r2 in itertools.product(rules, repeat=2):
            l1, l2 = r1.lhs, r2.lhs
            pairs = []
            # proper overlaps: suffix of l1 == prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    pairs.append((l1 + l2[k:], 0, len(l1) - k))
            # inclusions: l2 inside l1
            if r1 is not r2:
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        pairs.append((l1, 0, i))
            for w, i1, i2 in pairs:
                count += 1
                if _one_step(sys, w, i1, r1) != _one_step(sys, w, i2, r2):
                    witness = witness or (sys.word_str(w),)
    return CheckReport(sys.name, "confluence", "fail" if witness else "pass",
                       witnesses=[witness] if witness else [],
                       counts={"overlaps": count}, elapsed=t["elapsed"])


# ---------------------------------------------------------------- vector arithmetic


class VectorRing:
    """Batched arithmetic on coordinate rows (shape ``(k, dim)``, entries mod p)."""

    def __init__(self, sys: RewriteSystem):
        self.sys = sys
        self.p = sys.p
        self.dim = sys.dim
        self.T2 = sys.structure_constants.reshape(self.dim * self.dim, self.dim).astype(np.float64)

    def star(self, A, B):
        A = np.atleast_2d(A)
        B = np.atleast_2d(B)
        if self.dim == 0:
            return np.zeros((max(len(A), len(B)), 0), dtype=np.int64)
        outer = (A[:, :, None] * B[:, None, :]).reshape(len(A) if len(A) > 1 else len(B), -1)
        return np.rint(outer.astype(np.float64) @ self.T2).astype(np.int64) % self.p

    def add(self, A, B):
        return (A + B) % self.p

    def neg(self, A):
        return (-A) % self.p

    def circle(self, A, B):
        return (A + B + self.star(A, B)) % self.p

    def circle_inverse(self, A):
        # -a + a*a - a*a*a + ... ; finite since words longer than max_deg vanish
        A = np.atleast_2d(A)
        total = np.zeros_like(A)
        power = A
        sign = -1
        for _ in range(max(self.sys.max_deg, 1)):
            total = (total + sign * power) % self.p
            power = self.star(power, A)
            sign = -sign
        return total

    def left(self, A, B):
        """``^a b = a*b + b``."""
        return (self.star(A, B) + B) % self.p

    def right(self, A, C):
        """``a^c = ^((^a c)^-1) a``."""
        return self.left(self.circle_inverse(self.left(A, C)), A)

    def random(self, rng, k):
        return rng.integers(0, self.p, size=(k, self.dim), dtype=np.int64)


# ---------------------------------------------------------------- element-level ops


def add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def star(a: RingElement, b: RingElement) -> RingElement:
    return a.sys.star(a, b)


def circle(a: RingElement, b: RingElement) -> RingElement:
    """Adjoint product ``a + b + a*b``."""
    return a + b + star(a, b)


def circle_inverse(a: RingElement) -> RingElement:
    total = a.sys.zero()
    power = a
    sign = -1
    for _ in range(max(a.sys.max_deg, 1)):
        total = total + power * sign
        power = star(power, a)
        sign = -sign
    return total


def ring_actions(a: RingElement, b: RingElement) -> tuple[RingElement, RingElement]:
    """``(^a b, a^b)`` with ``^a b = a*b + b`` and ``a^b = ^((^a b)^-1) a``."""
    left = star(a, b) + b
    inv = circle_inverse(left)
    return left, star(inv, a) + a


def check_action_shapes(a: RingElement, b: RingElement) -> bool:
    """``^b a - a = b*a`` and ``a^b - a`` lives in degrees above min-degree(a)."""
    left_ba, _ = ring_actions(b, a)
    _, right_ab = ring_actions(a, b)
    ok1 = (left_ba - a) == star(b, a)
    tail = right_ab - a
    ok2 = not tail or not a or min(tail.degrees()) > a.min_degree()
    return ok1 and ok2


# ---------------------------------------------------------------- graded criteria


def _triple_products(sys):
    T = sys.structure_constants
    return np.einsum("uvk,kwl->uvwl", T, T) % sys.p  # (u*v)*w


def _words(sys, *idx):
    return tuple(sys.word_str(sys.basis[i]) for i in idx)


def _literal_raut_scan(sys, vr, policy, salt):
    rng = np.random.default_rng([policy.seed, salt])
    bad_first = None
    done = 0
    k = policy.samples
    while done < k:
        step = min(20000, k - done)
        A, B, C = vr.random(rng, step), vr.random(rng, step), vr.random(rng, step)
        lhs = vr.right(vr.add(A, B), C)
        rhs = vr.add(vr.right(A, C), vr.right(B, C))
        bad = np.flatnonzero((lhs != rhs).any(axis=1))
        if len(bad):
            j = bad[0]
            bad_first = (A[j], B[j], C[j])
            done += j + 1
            break
        done += step
    return bad_first, done


def _fmt_vec(sys, v):
    return sys.format(sys.from_vector(v))


SEARCH_SAMPLES = 10**4


def _candidates(sys):
    """Basis vectors, then sums of two distinct basis vectors."""
    n = sys.dim
    E = np.eye(n, dtype=np.int64)
    pairs = [E[i] + E[j] for i in range(n) for j in range(i + 1, n)]
    return np.concatenate([E, np.array(pairs, dtype=np.int64).reshape(-1, n)]) % sys.p


def _search(cands, arity, bad_fn, step=20000):
    k = len(cands)
    total = k**arity
    for start in range(0, total, step):
        flat = np.arange(start, min(total, start + step), dtype=np.int64)
        cols = [cands[(flat // k**e) % k] for e in range(arity - 1, -1, -1)]
        bad = np.flatnonzero(bad_fn(*cols))
        if len(bad):
            return tuple(c[bad[0]] for c in cols)
    return None


def _search_policy(policy):
    return ScanPolicy(policy.max_evals, max(policy.samples, SEARCH_SAMPLES), policy.seed)


def find_literal_raut_counterexample(sys: RewriteSystem, policy: ScanPolicy = DEFAULT_POLICY):
    """A triple (a, b, c) with (a+b)^c != a^c + b^c.

    Tries basis vectors and sums of two basis vectors in order, then random triples.
    """
    vr = VectorRing(sys)
    if sys.dim == 0:
        return None

    def bad(A, B, C):
        return (vr.right(vr.add(A, B), C) != vr.add(vr.right(A, C), vr.right(B, C))).any(axis=1)

    E = np.eye(sys.dim, dtype=np.int64)
    w = _search(E, 3, bad) or _search(_candidates(sys), 3, bad)
    if w is None:
        w, _ = _literal_raut_scan(sys, vr, _search_policy(policy), salt=91)
    return w


def check_raut_graded(sys: RewriteSystem, policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    """Raut through ``u*v*w + w*v*u = 0`` on basis words, plus a literal sampled scan.

    For ``max_deg <= 3`` the basis criterion is exact: the correction terms
    ``a*c*(b^c - b)`` have degree >= 4 and vanish.  Deeper systems fall back
    on the sampled literal scan when the basis criterion holds.
    """
    parts = []
    with timed() as t:
        n = sys.dim
        witnesses = []
        if n:
            Q = _triple_products(sys)
            S = (Q + Q.transpose(2, 1, 0, 3)) % sys.p
            for u, v, w in np.argwhere(S.any(axis=3)):
                witnesses.append(_words(sys, u, v, w))
                if len(witnesses) >= 64:
                    break
    basis = CheckReport(sys.name, "raut_basis_criterion", "fail" if witnesses else "pass",
                        witnesses=witnesses, counts={"scanned": n**3}, elapsed=t["elapsed"])
    exact = sys.max_deg <= 3
    basis.notes.append("exact: degree >= 4 vanishes" if exact else "necessary only (max_deg > 3)")
    parts.append(basis)
    vr = VectorRing(sys)
    with timed() as t:
        if n:
            bad, done = _literal_raut_scan(sys, vr, policy, salt=90)
        else:
            bad, done = None, 0
    lit_w = [] if bad is None else [tuple(_fmt_vec(sys, v) for v in bad)]
    parts.append(CheckReport(sys.name, "raut_literal_sampled", "fail" if lit_w else "pass",
                             witnesses=lit_w, counts={"scanned": done, "sampled": done},
                             seed=policy.seed, elapsed=t["elapsed"]))
    if basis.failed:
        with timed() as t:
            found = find_literal_raut_counterexample(sys, policy)
        if found is None:
            raise InvariantError(f"{sys.name}: basis criterion fails but no literal Raut counterexample found")
        parts.append(CheckReport(sys.name, "raut_literal_counterexample", "fail",
                                 witnesses=[tuple(_fmt_vec(sys, v) for v in found)], elapsed=t["elapsed"]))
    if basis.passed and exact and lit_w:
        raise InvariantError(f"{sys.name}: exact Raut criterion passes but a literal sample fails", witness=lit_w[0])
    if basis.failed:
        verdict = "fail"
    elif exact:
        verdict = "pass"
    else:
        verdict = "fail" if lit_w else "pass"
    rep = CheckReport(sys.name, "raut_graded", verdict, parts=parts, seed=policy.seed,
                      elapsed=sum(p.elapsed for p in parts))
    rep.notes.append("basis criterion exact" if exact else "verdict from sampled literal scan")
    return rep


def _literal_lri_scan(sys, vr, policy, salt):
    rng = np.random.default_rng([policy.seed, salt])
    done = 0
    while done < policy.samples:
        step = min(20000, policy.samples - done)
        A, C = vr.random(rng, step), vr.random(rng, step)
        ok = ((vr.right(vr.left(A, C), A) == C).all(axis=1)
              & (vr.left(A, vr.right(C, A)) == C).all(axis=1))
        bad = np.flatnonzero(~ok)
        if len(bad):
            j = bad[0]
            return (A[j], C[j]), done + j + 1
        done += step
    return None, done


def find_literal_lri_counterexample(sys: RewriteSystem, policy: ScanPolicy = DEFAULT_POLICY):
    """A pair (a, c) with (^a c)^a != c or ^a (c^a) != c; same search order as for Raut."""
    vr = VectorRing(sys)
    if sys.dim == 0:
        return None

    def bad(A, C):
        return ~((vr.right(vr.left(A, C), A) == C).all(axis=1) & (vr.left(A, vr.right(C, A)) == C).all(axis=1))

    w = _search(_candidates(sys), 2, bad)
    if w is None:
        w, _ = _literal_lri_scan(sys, vr, _search_policy(policy), salt=93)
    return w


def check_lri_graded(sys: RewriteSystem, policy: ScanPolicy = DEFAULT_POLICY) -> CheckReport:
    """lri through ``a*c*a = 0``, expanded over basis words (exact over any GF(p))."""
    parts = []
    with timed() as t:
        n = sys.dim
        witnesses = []
        if n:
            Q = _triple_products(sys)
            # u*v*u with v != u first, then the squares-in-the-middle, then symmetrised pairs
            for same in (False, True):
                for u in range(n):
                    for v in range(n):
                        if (u == v) == same and Q[u, v, u].any():
                            witnesses.append(_words(sys, u, v, u))
            for u in range(n):
                for w in range(u + 1, n):
                    for v in range(n):
                        if ((Q[u, v, w] + Q[w, v, u]) % sys.p).any():
                            witnesses.append(_words(sys, u, v, w))
            witnesses = witnesses[:64]
    parts.append(CheckReport(sys.name, "lri_basis_criterion", "fail" if witnesses else "pass",
                             witnesses=witnesses, counts={"scanned": n * n + n * n * (n - 1) // 2},
                             elapsed=t["elapsed"]))
    vr = VectorRing(sys)
    with timed() as t:
        if n:
            bad, done = _literal_lri_scan(sys, vr, policy, salt=92)
        else:
            bad, done = None, 0
    lit_w = [] if bad is None else [tuple(_fmt_vec(sys, v) for v in bad)]
    parts.append(CheckReport(sys.name, "lri_literal_sampled", "fail" if lit_w else "pass",
                             witnesses=lit_w, counts={"scanned": done, "sampled": done},
                             seed=policy.seed, elapsed=t["elapsed"]))
    if witnesses:
        with timed() as t:
            found = find_literal_lri_counterexample(sys, policy)
        if found is None:
            raise InvariantError(f"{sys.name}: a*c*a != 0 but no literal lri counterexample found")
        parts.append(CheckReport(sys.name, "lri_literal_counterexample", "fail",
                                 witnesses=[tuple(_fmt_vec(sys, v) for v in found)], elapsed=t["elapsed"]))
    if not witnesses and lit_w:
        raise InvariantError(f"{sys.name}: a*c*a = 0 holds but a literal lri sample fails", witness=lit_w[0])
    return CheckReport(sys.name, "lri_graded", "fail" if witnesses else "pass", parts=parts,
                       seed=policy.seed, elapsed=sum(p.elapsed for p in parts))


def graded_component(sys: RewriteSystem, i: int) -> list[tuple]:
    return [w for w in sys.basis if len(w) == i]


def mpl_graded(sys: RewriteSystem) -> int:
    """Largest degree with a nonzero component (0 for the zero ring)."""
    return max((len(w) for w in sys.basis), default=0)


# ---------------------------------------------------------------- finite brace


def element_vectors(sys: RewriteSystem) -> np.ndarray:
    """All p^dim coordinate rows; row index = sum coord_i p^i."""
    n, p = sys.dim, sys.p
    N = p**n
    idx = np.arange(N, dtype=np.int64)
    return np.stack([(idx // p**i) % p for i in range(n)], axis=1) if n else np.zeros((1, 0), np.int64)


def encode(sys: RewriteSystem, V) -> np.ndarray:
    w = sys.p ** np.arange(sys.dim, dtype=np.int64)
    return (np.asarray(V, dtype=np.int64) * w).sum(axis=-1)


def to_finite_brace(sys: RewriteSystem, cap: int = DEFAULT_CAP, policy: ScanPolicy | None = None) -> FiniteBrace:
    """Cayley tables of the two-sided brace (R, +, circle) on all p^dim elements.

    Rows are filled incrementally: row ``a`` comes from row ``a - e_i`` (i the
    lowest nonzero digit of a) by one translation and one table lookup, using
    linearity of ``a -> a*b`` in a.
    """
    N = sys.ring_order()
    if N > cap:
        raise RefusedError(f"{sys.name}: brace order {N} exceeds cap {cap}", {"order": N, "cap": cap})
    V = element_vectors(sys)
    n, p = sys.dim, sys.p
    idx = np.arange(N, dtype=np.int64)
    E = np.eye(n, dtype=np.int64)
    # plus[i][b] = b + e_i ; prod[i][b] = basis_i * b
    plus = [encode(sys, (V + E[i]) % p) for i in range(n)]
    T = sys.structure_constants
    prod = [encode(sys, (V @ T[i]) % p) for i in range(n)]
    add = np.empty((N, N), dtype=np.int64)
    st = np.empty((N, N), dtype=np.int64)
    add[0] = idx
    st[0] = 0
    steps = []
    for a in range(1, N):
        i = 0
        while (a // p**i) % p == 0:
            i += 1
        steps.append((a, a - p**i, i))
    for a, prev, i in steps:
        add[a] = plus[i][add[prev]]
    for a, prev, i in steps:
        st[a] = add[st[prev], prod[i]]
    mul = add[add, st]
    names = [sys.format(sys.from_vector(v), sep="") for v in V]
    return FiniteBrace(add.astype(np.int32), mul.astype(np.int32), names=names,
                       name=f"brace[{sys.name}]", policy=policy)


def basis_brace_indices(sys: RewriteSystem) -> list[int]:
    E = np.eye(sys.dim, dtype=np.int64)
    return encode(sys, E).tolist()


# ---------------------------------------------------------------- builtins


def _all_words(ngens, length):
    return list(itertools.product(range(ngens), repeat=length))


def builtin_thm6() -> RewriteSystem:
    """F_2<x, y> modulo xyy + yyx, xxy + yxx and all words of length 4."""
    X, Y = 0, 1
    rules = [((X, Y, Y), {(Y, Y, X): 1}), ((X, X, Y), {(Y, X, X): 1})]
    rules += [(w, {}) for w in _all_words(2, 4)]
    return RewriteSystem(2, ["x", "y"], rules, 3, name="thm6")


def builtin_thm8(p: int = 2) -> RewriteSystem:
    """Monomial algebra F_p<x, y> modulo all words of length 4."""
    rules = [(w, {}) for w in _all_words(2, 4)]
    return RewriteSystem(p, ["x", "y"], rules, 3, name="thm8" if p == 2 else f"thm8:p{p}")


def zero_ring(p: int = 2, gens=("x",)) -> RewriteSystem:
    return RewriteSystem(p, list(gens), [((g,), {}) for g in range(len(gens))], 0, name="zero")


def reversal_systems(p: int):
    """Every rule set on F_p<x, y> (words of length 4 -> 0) built from degree-3 reversal pairs.

    Each palindrome is kept or killed; each pair {w, reverse(w)} is kept,
    identified as ``w + reverse(w) = 0`` or killed.  Yields ``(label, system)``.
    """
    words3 = _all_words(2, 3)
    pal = [w for w in words3 if w == w[::-1]]
    pairs = sorted({tuple(sorted((w, w[::-1]))) for w in words3 if w != w[::-1]})
    probe = RewriteSystem(p, ["x", "y"], [], 3, validate=False)
    zero4 = [(w, {}) for w in _all_words(2, 4)]
    for pal_choice in itertools.product((False, True), repeat=len(pal)):
        for pair_choice in itertools.product(("keep", "anti", "kill"), repeat=len(pairs)):
            rules = [(w, {}) for w, kill in zip(pal, pal_choice) if kill]
            label = [probe.word_str(w) + "=0" for w, kill in zip(pal, pal_choice) if kill]
            for (a, b), how in zip(pairs, pair_choice):
                hi, lo = (a, b) if probe.deglex_key(a) > probe.deglex_key(b) else (b, a)
                if how == "anti":
                    rules.append((hi, {lo: -1}))
                    label.append(f"{probe.word_str(hi)}+{probe.word_str(lo)}=0")
                elif how == "kill":
                    rules += [(hi, {}), (lo, {})]
                    label.append(f"{probe.word_str(hi)}={probe.word_str(lo)}=0")
            yield ",".join(label) or "free", RewriteSystem(p, ["x", "y"], rules + zero4, 3, name=f"rev:p{p}:" + (",".join(label) or "free"))


def find_raut_instance(p: int = 3) -> RewriteSystem:
    """Largest reversal system over GF(p) whose basis Raut criterion passes with a nonzero degree-3 part."""
    best = None
    for _, sys in reversal_systems(p):
        if not graded_component(sys, 3):
            continue
        if not check_raut_graded(sys, ScanPolicy(samples=0)).part("raut_basis_criterion").passed:
            continue
        if best is None or sys.dim > best.dim:
            best = sys
    return best


def p3_fixture() -> RewriteSystem:
    """The instance ``find_raut_instance(3)`` returns, frozen."""
    X, Y = 0, 1
    rules = [((X, X, X), {}), ((X, Y, X), {}), ((Y, X, Y), {}), ((Y, Y, Y), {}),
             ((X, X, Y), {(Y, X, X): -1}), ((X, Y, Y), {(Y, Y, X): -1})]
    rules += [(w, {}) for w in _all_words(2, 4)]
    return RewriteSystem(3, ["x", "y"], rules, 3, name="p3fixture")
