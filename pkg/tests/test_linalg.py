import random

from hypothesis import given, settings, strategies as st

from almostalg.linalg import (
    PolyMatrix,
    det,
    is_unimodular,
    kernel_basis,
    snf,
    solve,
)
from almostalg.polys import poly_divides, poly_mul, poly_valuation


def rand_matrix(rng, rows, cols, p, maxdeg, modulus=None):
    ent = [[[rng.randrange(p) for _ in range(rng.randint(0, maxdeg + 1))]
            for _ in range(cols)] for _ in range(rows)]
    return PolyMatrix(rows, cols, p, ent, modulus)


def test_snf_small_example():
    # diag(1, s^3) from a generic 2x2 over F_2[s]
    A = PolyMatrix(2, 2, 2, [[[0, 1], [1]], [[], [0, 0, 1]]])
    res = snf(A)
    assert res.U.mul(res.D).mul(res.W) == A
    assert res.invariant_factors == [[1], [0, 0, 0, 1]]


coeff = st.integers(0, 2)
poly = st.lists(coeff, max_size=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(poly, min_size=4, max_size=4))
def test_snf_roundtrip_property(entries):
    A = PolyMatrix(2, 2, 3,
                   [[[c % 3 for c in entries[0]], [c % 3 for c in entries[1]]],
                    [[c % 3 for c in entries[2]], [c % 3 for c in entries[3]]]])
    res = snf(A)
    assert res.U.mul(res.D).mul(res.W) == A
    assert is_unimodular(res.U) and is_unimodular(res.W)
    diag = res.invariant_factors
    for a, b in zip(diag, diag[1:]):
        if a and b:
            assert poly_divides(a, b, 3)


def test_snf_chain_ring():
    rng = random.Random(5)
    for _ in range(50):
        p = rng.choice((2, 3))
        m = rng.choice((2, 4))
        A = rand_matrix(rng, 3, 3, p, m - 1, m)
        res = snf(A)
        assert res.U.mul(res.D).mul(res.W) == A
        assert res.U.mul(res.u_inv) == PolyMatrix.identity(3, p, m)
        assert res.W.mul(res.w_inv) == PolyMatrix.identity(3, p, m)
        vals = [poly_valuation(f) if f else None
                for f in res.invariant_factors]
        present = [v for v in vals if v is not None]
        assert present == sorted(present)


def test_kernel_basis_is_a_kernel():
    rng = random.Random(7)
    for _ in range(30):
        p = rng.choice((2, 3))
        A = rand_matrix(rng, 2, 3, p, 2)
        K = kernel_basis(A)
        prod = A.mul(K)
        assert prod.is_zero()
        # every kernel column is nonzero (basis, not padding)
        for j in range(K.cols):
            assert any(K.entries[i][j] for i in range(K.rows))


def test_solve_consistency():
    rng = random.Random(9)
    for _ in range(40):
        p = 2
        A = rand_matrix(rng, 3, 2, p, 2)
        x = [[rng.randrange(p) for _ in range(2)] for _ in range(2)]
        b = A.apply_to_vector(x)
        sol = solve(A, b)
        assert sol is not None
        assert A.apply_to_vector(sol) == b


def test_solve_detects_inconsistency():
    # column space of [[s],[s]] misses (1, 0)
    A = PolyMatrix(2, 1, 2, [[[0, 1]], [[0, 1]]])
    assert solve(A, [[1], []]) is None


def test_det_multiplicative():
    rng = random.Random(11)
    for _ in range(20):
        p = 3
        A = rand_matrix(rng, 2, 2, p, 2)
        B = rand_matrix(rng, 2, 2, p, 2)
        assert det(A.mul(B)) == poly_mul(det(A), det(B), p)


def test_unimodular_detection():
    U = PolyMatrix(2, 2, 2, [[[1], [0, 1]], [[], [1]]])
    assert is_unimodular(U)
    S = PolyMatrix(2, 2, 2, [[[0, 1], []], [[], [1]]])
    assert not is_unimodular(S)
