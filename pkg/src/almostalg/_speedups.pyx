# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the _pypoly kernels (dense F_p polynomial arithmetic)."""

BACKEND = "cython"


def poly_trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def poly_add(list a, list b, long p):
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    cdef Py_ssize_t i
    cdef long v
    for i in range(len(b)):
        v = (<long> out[i] + <long> b[i]) % p
        out[i] = v
    return poly_trim(out)


def poly_mul(list a, list b, long p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef Py_ssize_t i, j
    cdef long ai, acc
    for i in range(na):
        ai = <long> a[i]
        if ai:
            for j in range(nb):
                acc = (<long> out[i + j] + ai * <long> b[j]) % p
                out[i + j] = acc
    return poly_trim(out)


def poly_divmod(list a, list b, long p):
    cdef Py_ssize_t nb = len(b)
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    cdef list r = list(a)
    cdef Py_ssize_t db = nb - 1
    cdef long lead_inv = pow(b[db], p - 2, p)
    if len(r) <= db:
        return [], poly_trim(r)
    cdef list q = [0] * (len(r) - db)
    cdef Py_ssize_t i, j
    cdef long c, f, v
    for i in range(len(r) - 1, db - 1, -1):
        c = <long> r[i]
        if c:
            f = (c * lead_inv) % p
            q[i - db] = f
            for j in range(db + 1):
                v = (<long> r[i - db + j] - f * <long> b[j]) % p
                if v < 0:
                    v += p
                r[i - db + j] = v
    return poly_trim(q), poly_trim(r)
