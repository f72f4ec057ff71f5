"""Dense polynomials over F_p, lowest degree first.

Backend selection: the compiled kernels in _speedups are used when the
extension built; set ALMOSTALG_PURE=1 to force the pure-Python kernels.
Everything above the three kernel functions (gcd, xgcd, monic, eval, ...)
is plain Python either way.
"""
from __future__ import annotations

import os

if os.environ.get("ALMOSTALG_PURE"):
    from . import _pypoly as _kernel
else:
    try:
        from . import _speedups as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _pypoly as _kernel

BACKEND = _kernel.BACKEND

poly_trim = _kernel.poly_trim
poly_add = _kernel.poly_add
poly_mul = _kernel.poly_mul
poly_divmod = _kernel.poly_divmod


def poly_zero() -> list:
    return []

def poly_one() -> list:
    return [1]

def poly_const(c: int, p: int) -> list:
    c %= p
    return [c] if c else []

def poly_monomial(coef: int, deg: int, p: int) -> list:
    coef %= p
    if not coef:
        return []
    return [0] * deg + [coef]

def poly_deg(a: list) -> int:
    """Degree, with deg(0) = -1."""
    return len(a) - 1

def poly_is_zero(a: list) -> bool:
    return not a

def poly_neg(a: list, p: int) -> list:
    return [(-c) % p for c in a]

def poly_sub(a: list, b: list, p: int) -> list:
    return poly_add(a, poly_neg(b, p), p)

def poly_scale(a: list, c: int, p: int) -> list:
    c %= p
    if not c:
        return []
    return poly_trim([(c * x) % p for x in a])

def poly_mod(a: list, b: list, p: int) -> list:
    return poly_divmod(a, b, p)[1]

def poly_monic(a: list, p: int) -> list:
    """Scale so the leading coefficient is 1 (zero stays zero)."""
    if not a:
        return []
    lead = a[-1]
    if lead == 1:
        return list(a)
    return poly_scale(a, pow(lead, p - 2, p), p)

def poly_gcd(a: list, b: list, p: int) -> list:
    while b:
        a, b = b, poly_mod(a, b, p)
    return poly_monic(a, p)

def poly_xgcd(a: list, b: list, p: int) -> tuple:
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    r0, r1 = list(a), list(b)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, poly_sub(u0, poly_mul(q, u1, p), p)
        v0, v1 = v1, poly_sub(v0, poly_mul(q, v1, p), p)
    if r0:
        lead = r0[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            r0 = poly_scale(r0, inv, p)
            u0 = poly_scale(u0, inv, p)
            v0 = poly_scale(v0, inv, p)
    return r0, u0, v0

def poly_pow(a: list, n: int, p: int) -> list:
    out = [1]
    base = list(a)
    while n:
        if n & 1:
            out = poly_mul(out, base, p)
        base = poly_mul(base, base, p)
        n >>= 1
    return out

def poly_eval(a: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc

def poly_divides(a: list, b: list, p: int) -> bool:
    """Does a divide b?  Zero divides only zero."""
    if not a:
        return not b
    return not poly_mod(b, a, p)

def poly_valuation(a: list) -> int:
    """Largest k with s^k | a; -1 for the zero polynomial."""
    for i, c in enumerate(a):
        if c:
            return i
    return -1

def poly_derivative(a: list, p: int) -> list:
    return poly_trim([(i * c) % p for i, c in enumerate(a)][1:])

def poly_to_string(a: list, var: str = "s") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(var if c == 1 else f"{c}*{var}")
        else:
            parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
    return " + ".join(parts)
