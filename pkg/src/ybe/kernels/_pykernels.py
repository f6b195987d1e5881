"""Pure numpy versions of the compiled triple scans.

Same contract as ``_ckernels``: first failing triple in scan order (or in
``idx`` row order) or ``None``.
"""

import numpy as np

CHUNK = 1 << 20


def _triples(m, idx):
    if idx is not None:
        idx = np.asarray(idx, dtype=np.int64)
        for start in range(0, len(idx), CHUNK):
            part = idx[start:start + CHUNK]
            yield part[:, 0], part[:, 1], part[:, 2]
        return
    total = m ** 3
    for start in range(0, total, CHUNK):
        flat = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        yield flat // (m * m), (flat // m) % m, flat % m


def _first(m, idx, ok_fn):
    for a, b, c in _triples(m, idx):
        ok = ok_fn(a, b, c)
        if not ok.all():
            k = int(np.argmin(ok))
            return (int(a[k]), int(b[k]), int(c[k]))
    return None


def assoc(op, idx=None):
    return _first(len(op), idx, lambda a, b, c: op[op[a, b], c] == op[a, op[b, c]])


def left_brace(add, mul, idx=None):
    return _first(
        len(add), idx,
        lambda a, b, c: add[mul[a, add[b, c]], a] == add[mul[a, b], mul[a, c]],
    )


def right_brace(add, mul, idx=None):
    return _first(
        len(add), idx,
        lambda a, b, c: add[mul[add[b, c], a], a] == add[mul[b, a], mul[c, a]],
    )


def rump(add, star, idx=None):
    def ok(a, b, c):
        lhs = star[add[add[star[a, b], a], b], c]
        rhs = add[add[star[a, star[b, c]], star[a, c]], star[b, c]]
        return lhs == rhs
    return _first(len(add), idx, ok)


def raut(add, right, idx=None):
    return _first(
        len(add), idx,
        lambda a, b, c: right[add[a, b], c] == add[right[a, c], right[b, c]],
    )


def laut(add, left, idx=None):
    return _first(
        len(add), idx,
        lambda a, b, c: left[a, add[b, c]] == add[left[a, b], left[a, c]],
    )


def braid(lam, rho, idx=None):
    def ok(x, y, z):
        a1 = lam[x, y]
        b1 = rho[y, x]
        a2 = lam[b1, z]
        r3 = rho[z, b1]
        l1 = lam[a1, a2]
        l2 = rho[a2, a1]
        u = lam[y, z]
        v = rho[z, y]
        r1 = lam[x, u]
        b2 = rho[u, x]
        return (r1 == l1) & (lam[b2, v] == l2) & (rho[v, b2] == r3)
    return _first(len(lam), idx, ok)
