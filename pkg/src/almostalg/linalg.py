"""Exact matrix algebra over F_p[s] and the chain ring F_p[s]/(s^m).

Matrices are dense lists of dense polynomials (see polys.py).  The central
routine is snf(), Smith normal form with tracked unimodular transforms and
their inverses, computed by xgcd-driven elimination.  Kernels, solving and
cokernel invariants are all derived from it.
"""
from __future__ import annotations

from .polys import (
    poly_add,
    poly_deg,
    poly_divides,
    poly_divmod,
    poly_monic,
    poly_monomial,
    poly_mul,
    poly_neg,
    poly_scale,
    poly_sub,
    poly_trim,
    poly_valuation,
    poly_xgcd,
    poly_to_string,
)


class PolyMatrix:
    """Dense matrix over F_p[s], optionally reduced mod s^modulus.

    entries[i][j] is a coefficient list; when modulus is set every entry is
    kept with degree < modulus.
    """

    __slots__ = ("rows", "cols", "p", "modulus", "entries")

    def __init__(self, rows, cols, p, entries=None, modulus=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        self.p = p
        self.modulus = modulus
        if entries is None:
            self.entries = [[[] for _ in range(cols)] for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entry grid does not match dimensions")
            self.entries = [[self._reduce(list(e)) for e in row] for row in entries]

    def _reduce(self, e):
        poly_trim(e)
        if self.modulus is not None and len(e) > self.modulus:
            del e[self.modulus:]
            poly_trim(e)
        return e

    @classmethod
    def identity(cls, n, p, modulus=None):
        m = cls(n, n, p, modulus=modulus)
        for i in range(n):
            m.entries[i][i] = [1]
        return m

    @classmethod
    def from_ints(cls, grid, p, modulus=None):
        """Build from a grid of integers (constants)."""
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        ent = [[[c % p] if c % p else [] for c in row] for row in grid]
        return cls(rows, cols, p, ent, modulus)

    def copy(self):
        return PolyMatrix(
            self.rows, self.cols, self.p,
            [[list(e) for e in row] for row in self.entries],
            self.modulus,
        )

    def lift(self):
        """Same entries viewed over F_p[s] (drop the modulus)."""
        return PolyMatrix(
            self.rows, self.cols, self.p,
            [[list(e) for e in row] for row in self.entries],
        )

    def with_modulus(self, m):
        return PolyMatrix(
            self.rows, self.cols, self.p,
            [[list(e) for e in row] for row in self.entries],
            m,
        )

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.p == other.p
            and self.modulus == other.modulus
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.p, self.modulus,
                     tuple(tuple(tuple(e) for e in row) for row in self.entries)))

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.cols} vs {other.rows}")
        p = self.p
        out = PolyMatrix(self.rows, other.cols, p,
                         modulus=self.modulus if self.modulus == other.modulus else None)
        for i in range(self.rows):
            for j in range(other.cols):
                acc = []
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = poly_add(acc, poly_mul(a, b, p), p)
                out.entries[i][j] = out._reduce(acc)
        return out

    def add(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        out = self.copy()
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[i][j] = out._reduce(
                    poly_add(out.entries[i][j], other.entries[i][j], self.p))
        return out

    def neg(self):
        out = self.copy()
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[i][j] = poly_neg(out.entries[i][j], self.p)
        return out

    def transpose(self):
        out = PolyMatrix(self.cols, self.rows, self.p, modulus=self.modulus)
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[j][i] = list(self.entries[i][j])
        return out

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        ent = [self.entries[i] + other.entries[i] for i in range(self.rows)]
        return PolyMatrix(self.rows, self.cols + other.cols, self.p,
                          [[list(e) for e in row] for row in ent], self.modulus)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        ent = self.entries + other.entries
        return PolyMatrix(self.rows + other.rows, self.cols, self.p,
                          [[list(e) for e in row] for row in ent], self.modulus)

    def column(self, j):
        return [list(self.entries[i][j]) for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, cols, rows, p, modulus=None):
        m = cls(rows, len(cols), p, modulus=modulus)
        for j, col in enumerate(cols):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i in range(rows):
                m.entries[i][j] = m._reduce(list(col[i]))
        return m

    def apply_to_vector(self, vec):
        """Matrix times a column vector (list of polys)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        p = self.p
        out = []
        for i in range(self.rows):
            acc = []
            for k in range(self.cols):
                a = self.entries[i][k]
                if a and vec[k]:
                    acc = poly_add(acc, poly_mul(a, vec[k], p), p)
            out.append(self._reduce(acc))
        return out

    def __repr__(self):
        body = "; ".join(
            ", ".join(poly_to_string(e) for e in row) for row in self.entries)
        tail = f" mod s^{self.modulus}" if self.modulus is not None else ""
        return f"<{self.rows}x{self.cols} [{body}]{tail}>"


class SNFResult:
    """A = U * D * W with U, W unimodular; D diagonal, d1 | d2 | ..., monic.

    u_inv and w_inv are carried along so callers can change basis in both
    directions without re-inverting anything.
    """

    __slots__ = ("U", "D", "W", "u_inv", "w_inv", "invariant_factors")

    def __init__(self, U, D, W, u_inv, w_inv):
        self.U = U
        self.D = D
        self.W = W
        self.u_inv = u_inv
        self.w_inv = w_inv
        n = min(D.rows, D.cols)
        self.invariant_factors = [list(D.entries[i][i]) for i in range(n)]

    def rank(self):
        return sum(1 for f in self.invariant_factors if f)


def _redm(e, m):
    """Reduce a coefficient list mod s^m (m=None: just trim)."""
    if m is not None and len(e) > m:
        del e[m:]
    return poly_trim(e)

def _row_swap(M, i, j):
    M.entries[i], M.entries[j] = M.entries[j], M.entries[i]

def _col_swap(M, i, j):
    for row in M.entries:
        row[i], row[j] = row[j], row[i]

def _row_addmul(M, i, j, f, p, m=None):
    """row i += f * row j"""
    if not f:
        return
    ri, rj = M.entries[i], M.entries[j]
    for c in range(M.cols):
        if rj[c]:
            ri[c] = _redm(poly_add(ri[c], poly_mul(f, rj[c], p), p), m)

def _col_addmul(M, i, j, f, p, m=None):
    """col i += f * col j"""
    if not f:
        return
    for row in M.entries:
        if row[j]:
            row[i] = _redm(poly_add(row[i], poly_mul(f, row[j], p), p), m)

def _row_combine(M, i, j, a, b, c, d, p, m=None):
    """(row i, row j) <- (a*ri + b*rj, c*ri + d*rj)"""
    ri, rj = M.entries[i], M.entries[j]
    for k in range(M.cols):
        x, y = ri[k], rj[k]
        ri[k] = _redm(poly_add(poly_mul(a, x, p), poly_mul(b, y, p), p), m)
        rj[k] = _redm(poly_add(poly_mul(c, x, p), poly_mul(d, y, p), p), m)

def _col_combine(M, i, j, a, b, c, d, p, m=None):
    """(col i, col j) <- (a*ci + b*cj, c*ci + d*cj)"""
    for row in M.entries:
        x, y = row[i], row[j]
        row[i] = _redm(poly_add(poly_mul(a, x, p), poly_mul(b, y, p), p), m)
        row[j] = _redm(poly_add(poly_mul(c, x, p), poly_mul(d, y, p), p), m)

def _row_scale(M, i, c, p):
    M.entries[i] = [poly_scale(e, c, p) for e in M.entries[i]]

def _col_scale(M, j, c, p):
    for row in M.entries:
        row[j] = poly_scale(row[j], c, p)

def _row_mulpoly(M, i, f, p, m=None):
    """row i *= f (f must be a unit in context for invertibility)."""
    M.entries[i] = [_redm(poly_mul(f, e, p), m) for e in M.entries[i]]

def _col_mulpoly(M, j, f, p, m=None):
    for row in M.entries:
        row[j] = _redm(poly_mul(f, row[j], p), m)


def snf(A: PolyMatrix) -> SNFResult:
    """Smith normal form with tracked transforms.

    Over F_p[s] this is exact xgcd elimination with deterministic pivoting
    (minimal degree, row-major ties).  With a modulus the computation lifts
    to F_p[s], runs there, and reduces at the end; diagonal entries are
    then renormalized to powers of s when the reduction demands it.
    """
    if A.modulus is not None:
        return _snf_chain(A)
    p = A.p
    D = A.copy()
    # Track L, R with D = L * A * R and their inverses; then U = Linv, W = Rinv.
    L = PolyMatrix.identity(A.rows, p)
    Linv = PolyMatrix.identity(A.rows, p)
    R = PolyMatrix.identity(A.cols, p)
    Rinv = PolyMatrix.identity(A.cols, p)
    n = min(A.rows, A.cols)

    for k in range(n):
        while True:
            piv = _find_pivot(D, k)
            if piv is None:
                break
            pi, pj = piv
            if pi != k:
                _row_swap(D, k, pi)
                _row_swap(L, k, pi)
                _col_swap(Linv, k, pi)
            if pj != k:
                _col_swap(D, k, pj)
                _col_swap(R, k, pj)
                _row_swap(Rinv, k, pj)
            if _clear_column(D, L, Linv, k, p) or _clear_row(D, R, Rinv, k, p):
                continue
            # Row and column k are clear; enforce that the pivot divides
            # every remaining entry, else fold the offending row in.
            bad = _find_nondivisible(D, k)
            if bad is None:
                break
            _row_addmul(D, k, bad, [1], p)
            _row_addmul(L, k, bad, [1], p)
            _row_addmul_inv(Linv, k, bad, [1], p)
        # normalize pivot monic
        d = D.entries[k][k]
        if d and d[-1] != 1:
            c = d[-1]
            cinv = pow(c, p - 2, p)
            _row_scale(D, k, cinv, p)
            _row_scale(L, k, cinv, p)
            _col_scale(Linv, k, c, p)

    U, W = Linv, Rinv
    res = SNFResult(U, D, W, L, R)
    _check_snf(A, res)
    return res


def _row_addmul_inv(Linv, i, j, f, p):
    """Inverse tracking for 'row i += f*row j' applied on the left:
    column j of Linv gets -f * column i."""
    nf = poly_neg(f, p)
    for row in Linv.entries:
        if row[i]:
            row[j] = poly_add(row[j], poly_mul(nf, row[i], p), p)


def _clear_column(D, L, Linv, k, p):
    """Eliminate entries below the pivot in column k.  Returns True if the
    pivot changed (degree dropped), signalling another sweep."""
    changed = False
    for i in range(k + 1, D.rows):
        b = D.entries[i][k]
        if not b:
            continue
        a = D.entries[k][k]
        q, r = poly_divmod(b, a, p)
        if not r:
            f = poly_neg(q, p)
            _row_addmul(D, i, k, f, p)
            _row_addmul(L, i, k, f, p)
            _row_addmul_inv(Linv, i, k, f, p)
        else:
            g, u, v = poly_xgcd(a, b, p)
            aq = poly_divmod(a, g, p)[0]
            bq = poly_divmod(b, g, p)[0]
            # [[u, v], [-bq, aq]] has determinant 1
            _row_combine(D, k, i, u, v, poly_neg(bq, p), aq, p)
            _row_combine(L, k, i, u, v, poly_neg(bq, p), aq, p)
            # inverse is [[aq, -v], [bq, u]]; applied to columns of Linv
            _col_combine(Linv, k, i, aq, bq, poly_neg(v, p), u, p)
            changed = True
    return changed


def _clear_row(D, R, Rinv, k, p):
    """Column-operation mirror of _clear_column for row k."""
    changed = False
    for j in range(k + 1, D.cols):
        b = D.entries[k][j]
        if not b:
            continue
        a = D.entries[k][k]
        q, r = poly_divmod(b, a, p)
        if not r:
            f = poly_neg(q, p)
            _col_addmul(D, j, k, f, p)
            _col_addmul(R, j, k, f, p)
            # inverse on Rinv rows: row k of Rinv gets -f * ... mirrored
            nf = q
            ri, rk = Rinv.entries[j], Rinv.entries[k]
            for c in range(Rinv.cols):
                if ri[c]:
                    rk[c] = poly_add(rk[c], poly_mul(nf, ri[c], p), p)
        else:
            g, u, v = poly_xgcd(a, b, p)
            aq = poly_divmod(a, g, p)[0]
            bq = poly_divmod(b, g, p)[0]
            _col_combine(D, k, j, u, v, poly_neg(bq, p), aq, p)
            _col_combine(R, k, j, u, v, poly_neg(bq, p), aq, p)
            _row_combine(Rinv, k, j, aq, bq, poly_neg(v, p), u, p)
            changed = True
    return changed


def _find_pivot(D, k):
    """Nonzero entry of minimal degree in the trailing block, row-major ties."""
    best = None
    best_deg = None
    for i in range(k, D.rows):
        for j in range(k, D.cols):
            e = D.entries[i][j]
            if e:
                d = poly_deg(e)
                if best_deg is None or d < best_deg:
                    best, best_deg = (i, j), d
    return best


def _find_nondivisible(D, k):
    """Row index i > k containing an entry not divisible by the pivot."""
    a = D.entries[k][k]
    for i in range(k + 1, D.rows):
        for j in range(k + 1, D.cols):
            e = D.entries[i][j]
            if e and poly_divmod(e, a, D.p)[1]:
                return i
    return None


def _check_snf(A, res):
    prod = res.U.mul(res.D).mul(res.W)
    if prod.entries != A.entries:
        raise AssertionError("SNF verification failed: U*D*W != A")
    facs = res.invariant_factors
    for i in range(len(facs) - 1):
        if facs[i] and facs[i + 1]:
            if poly_divmod(facs[i + 1], facs[i], A.p)[1]:
                raise AssertionError("SNF divisibility chain violated")
        elif not facs[i] and facs[i + 1]:
            raise AssertionError("zero invariant factor precedes a nonzero one")


def _snf_chain(A: PolyMatrix) -> SNFResult:
    """SNF over the chain ring F_p[s]/(s^m) by direct local elimination.

    Every nonzero element factors as unit * s^v, so the entry of minimal
    valuation divides the whole trailing block and all clearing divisions
    are exact -- no xgcd needed.  The pivot is first normalized to s^v by a
    unit row scaling, after which clearing uses plain shifts.
    """
    m = A.modulus
    p = A.p
    D = A.copy()
    L = PolyMatrix.identity(A.rows, p, modulus=m)
    Linv = PolyMatrix.identity(A.rows, p, modulus=m)
    R = PolyMatrix.identity(A.cols, p, modulus=m)
    Rinv = PolyMatrix.identity(A.cols, p, modulus=m)
    n = min(A.rows, A.cols)

    for k in range(n):
        piv = _find_pivot_val(D, k)
        if piv is None:
            break
        pi, pj = piv
        if pi != k:
            _row_swap(D, k, pi)
            _row_swap(L, k, pi)
            _col_swap(Linv, k, pi)
        if pj != k:
            _col_swap(D, k, pj)
            _col_swap(R, k, pj)
            _row_swap(Rinv, k, pj)
        d = D.entries[k][k]
        v = poly_valuation(d)
        unit = d[v:]
        if unit != [1]:
            uin = _unit_inverse(unit, m, p)
            _row_mulpoly(D, k, uin, p, m)
            _row_mulpoly(L, k, uin, p, m)
            _col_mulpoly(Linv, k, unit, p, m)
        # pivot is now exactly s^v; clear column k then row k by shifts
        for i in range(k + 1, D.rows):
            b = D.entries[i][k]
            if b:
                q = poly_neg(b[v:], p)
                _row_addmul(D, i, k, q, p, m)
                _row_addmul(L, i, k, q, p, m)
                _row_addmul_inv(Linv, i, k, q, p)
        for j in range(k + 1, D.cols):
            b = D.entries[k][j]
            if b:
                q = poly_neg(b[v:], p)
                _col_addmul(D, j, k, q, p, m)
                _col_addmul(R, j, k, q, p, m)
                nq = b[v:]
                rj, rk = Rinv.entries[j], Rinv.entries[k]
                for c in range(Rinv.cols):
                    if rj[c]:
                        rk[c] = _redm(poly_add(rk[c], poly_mul(nq, rj[c], p), p), m)

    res = SNFResult(Linv, D, Rinv, L, R)
    prod = Linv.mul(D).mul(Rinv)
    if prod.entries != A.entries:
        raise AssertionError("chain-ring SNF verification failed")
    return res


def _find_pivot_val(D, k):
    """Nonzero entry of minimal s-valuation in the trailing block."""
    best = None
    best_v = None
    for i in range(k, D.rows):
        for j in range(k, D.cols):
            e = D.entries[i][j]
            if e:
                v = poly_valuation(e)
                if best_v is None or v < best_v:
                    best, best_v = (i, j), v
    return best


def _unit_inverse(u, m, p):
    """Inverse of a unit of F_p[s]/(s^m) (nonzero constant term)."""
    sm = poly_monomial(1, m, p)
    g, a, _ = poly_xgcd(u, sm, p)
    if poly_deg(g) != 0:
        raise AssertionError("not a unit in the chain ring")
    # g is the monic gcd = 1 already after normalization
    return poly_divmod(a, sm, p)[1]


def kernel_basis(A: PolyMatrix) -> PolyMatrix:
    """Columns generate ker(A); verified A*K = 0 before returning."""
    res = snf(A)
    p = A.p
    m = A.modulus
    gens = []
    n = min(A.rows, A.cols)
    for i in range(A.cols):
        if i < n and res.D.entries[i][i]:
            if m is None:
                continue
            v = poly_valuation(res.D.entries[i][i])
            if v == 0:
                continue
            col = [[] for _ in range(A.cols)]
            col[i] = poly_monomial(1, m - v, p)
            gens.append(col)
        else:
            col = [[] for _ in range(A.cols)]
            col[i] = [1]
            gens.append(col)
    if not gens:
        return PolyMatrix(A.cols, 0, p, modulus=m)
    E = PolyMatrix.from_columns(gens, A.cols, p, modulus=m)
    K = (res.w_inv.with_modulus(m) if m is not None else res.w_inv).mul(E)
    if not A.mul(K).is_zero():
        raise AssertionError("kernel verification failed")
    return K


def solve(A: PolyMatrix, b) -> list | None:
    """Some x with A*x = b, or None when no solution exists.

    b is a list of polynomials of length A.rows.
    """
    if len(b) != A.rows:
        raise ValueError(f"vector length {len(b)} != {A.rows} rows")
    res = snf(A)
    p = A.p
    m = A.modulus
    u_inv = res.u_inv.with_modulus(m) if m is not None else res.u_inv
    c = u_inv.apply_to_vector([list(e) for e in b])
    n = min(A.rows, A.cols)
    y = [[] for _ in range(A.cols)]
    for i in range(A.rows):
        ci = c[i]
        d = res.D.entries[i][i] if i < n else []
        if not d:
            if ci:
                return None
            continue
        if not ci:
            continue
        if m is None:
            q, r = poly_divmod(ci, d, p)
            if r:
                return None
            y[i] = q
        else:
            v = poly_valuation(d)
            if poly_valuation(ci) < v:
                return None
            shifted = ci[v:]
            unit = d[v:] if len(d) > v else [1]
            if poly_valuation(unit) != 0:
                raise AssertionError("diagonal entry not unit times s^v")
            uin = _unit_inverse(unit, m, p)
            y[i] = poly_divmod(poly_mul(uin, shifted, p), poly_monomial(1, m, p), p)[1]
    w_inv = res.w_inv.with_modulus(m) if m is not None else res.w_inv
    x = w_inv.apply_to_vector(y)
    check = A.apply_to_vector(x)
    target = [A._reduce(list(e)) for e in b]
    if check != target:
        return None
    return x


def det(A: PolyMatrix) -> list:
    """Determinant over F_p[s] by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    if A.modulus is not None:
        d = det(A.lift())
        return poly_divmod(d, poly_monomial(1, A.modulus, A.p), A.p)[1]
    n = A.rows
    if n == 0:
        return [1]
    p = A.p
    M = [[list(e) for e in row] for row in A.entries]
    prev = [1]
    sign = 1
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return []
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(
                    poly_mul(M[k][k], M[i][j], p),
                    poly_mul(M[i][k], M[k][j], p), p)
                q, r = poly_divmod(num, prev, p) if prev != [1] else (num, [])
                if r:
                    raise AssertionError("Bareiss exact division failed")
                M[i][j] = q
            M[i][k] = []
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return poly_neg(d, p) if sign < 0 else d


def is_unimodular(A: PolyMatrix) -> bool:
    """Determinant a unit: nonzero constant over F_p[s], valuation-0 element
    over the chain ring."""
    if A.rows != A.cols:
        return False
    if A.modulus is not None:
        d = det(A)
        return bool(d) and poly_valuation(d) == 0
    d = det(A)
    return poly_deg(d) == 0
