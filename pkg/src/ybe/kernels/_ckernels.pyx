# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled triple scans over int32 Cayley/action tables.

Every function returns the first failing triple (in scan order, or in the
order of the rows of ``idx`` when given) or ``None``.  Tables are C-contiguous
``int32``; ``idx`` is an ``(k, 3)`` ``int64`` array of sampled triples.
"""

import numpy as np

ctypedef const int[:, ::1] Table
ctypedef const long long[:, ::1] Triples


cdef inline bint _assoc(Table op, int a, int b, int c) nogil:
    return op[op[a, b], c] == op[a, op[b, c]]


cdef inline bint _left_brace(Table add, Table mul, int a, int b, int c) nogil:
    # a(b+c) + a == ab + ac
    return add[mul[a, add[b, c]], a] == add[mul[a, b], mul[a, c]]


cdef inline bint _right_brace(Table add, Table mul, int a, int b, int c) nogil:
    # (b+c)a + a == ba + ca
    return add[mul[add[b, c], a], a] == add[mul[b, a], mul[c, a]]


cdef inline bint _rump(Table add, Table star, int a, int b, int c) nogil:
    # (a*b + a + b)*c == a*(b*c) + a*c + b*c
    cdef int lhs = star[add[add[star[a, b], a], b], c]
    cdef int rhs = add[add[star[a, star[b, c]], star[a, c]], star[b, c]]
    return lhs == rhs


cdef inline bint _raut(Table add, Table right, int a, int b, int c) nogil:
    # (a+b)^c == a^c + b^c ; right[a, c] = a^c
    return right[add[a, b], c] == add[right[a, c], right[b, c]]


cdef inline bint _laut(Table add, Table left, int a, int b, int c) nogil:
    # a(b+c) == ab + ac for the left action ; left[a, b] = ^a b
    return left[a, add[b, c]] == add[left[a, b], left[a, c]]


cdef inline bint _braid(Table lam, Table rho, int x, int y, int z) nogil:
    # r(x, y) = (lam[x, y], rho[y, x])
    cdef int a1, b1, a2, b2, l1, l2, l3, r1, r2, r3, u, v
    # r12 r23 r12
    a1 = lam[x, y]
    b1 = rho[y, x]
    a2 = lam[b1, z]
    r3 = rho[z, b1]
    l1 = lam[a1, a2]
    l2 = rho[a2, a1]
    # r23 r12 r23
    u = lam[y, z]
    v = rho[z, y]
    r1 = lam[x, u]
    b2 = rho[u, x]
    if r1 != l1:
        return False
    return lam[b2, v] == l2 and rho[v, b2] == r3


cdef object _scan(int kind, Table t1, Table t2, object idx):
    cdef int m = t1.shape[0]
    cdef int a, b, c
    cdef Py_ssize_t k, n
    cdef bint ok
    cdef Triples tr
    if idx is None:
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if kind == 0:
                        ok = _assoc(t1, a, b, c)
                    elif kind == 1:
                        ok = _left_brace(t1, t2, a, b, c)
                    elif kind == 2:
                        ok = _right_brace(t1, t2, a, b, c)
                    elif kind == 3:
                        ok = _rump(t1, t2, a, b, c)
                    elif kind == 4:
                        ok = _raut(t1, t2, a, b, c)
                    elif kind == 5:
                        ok = _laut(t1, t2, a, b, c)
                    else:
                        ok = _braid(t1, t2, a, b, c)
                    if not ok:
                        return (a, b, c)
        return None
    tr = np.ascontiguousarray(idx, dtype=np.int64)
    n = tr.shape[0]
    for k in range(n):
        a = <int>tr[k, 0]
        b = <int>tr[k, 1]
        c = <int>tr[k, 2]
        if kind == 0:
            ok = _assoc(t1, a, b, c)
        elif kind == 1:
            ok = _left_brace(t1, t2, a, b, c)
        elif kind == 2:
            ok = _right_brace(t1, t2, a, b, c)
        elif kind == 3:
            ok = _rump(t1, t2, a, b, c)
        elif kind == 4:
            ok = _raut(t1, t2, a, b, c)
        elif kind == 5:
            ok = _laut(t1, t2, a, b, c)
        else:
            ok = _braid(t1, t2, a, b, c)
        if not ok:
            return (a, b, c)
    return None


def assoc(op, idx=None):
    return _scan(0, op, op, idx)


def left_brace(add, mul, idx=None):
    return _scan(1, add, mul, idx)


def right_brace(add, mul, idx=None):
    return _scan(2, add, mul, idx)


def rump(add, star, idx=None):
    return _scan(3, add, star, idx)


def raut(add, right, idx=None):
    return _scan(4, add, right, idx)


def laut(add, left, idx=None):
    return _scan(5, add, left, idx)


def braid(lam, rho, idx=None):
    return _scan(6, lam, rho, idx)
