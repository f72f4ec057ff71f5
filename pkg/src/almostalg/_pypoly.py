"""Pure-Python kernels for dense polynomial arithmetic over F_p.

A polynomial is a list of ints in [0, p), lowest degree first, with no
trailing zeros; [] is the zero polynomial.  These three functions are the
hot inner loops; a compiled twin lives in _speedups.pyx.
"""
from __future__ import annotations

BACKEND = "python"


def poly_trim(a: list) -> list:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def poly_add(a: list, b: list, p: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] = (out[i] + b[i]) % p
    return poly_trim(out)


def poly_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_divmod(a: list, b: list, p: int) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead_inv = pow(b[db], p - 2, p)
    if len(r) <= db:
        return [], poly_trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            f = (c * lead_inv) % p
            q[i - db] = f
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - f * b[j]) % p
    return poly_trim(q), poly_trim(r)
