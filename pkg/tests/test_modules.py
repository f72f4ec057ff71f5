from fractions import Fraction

import pytest

from almostalg.base_ring import RingConfig
from almostalg.exponents import PExp
from almostalg.linalg import PolyMatrix
from almostalg.modules import (
    ModuleMap,
    PresentedModule,
    base_change,
    cokernel_map,
    direct_sum,
    ext,
    hom_module,
    image_map,
    iso_test,
    kernel_map,
    ring_modulus,
    tensor,
    tor,
)

V2 = RingConfig.perfect(2)
W2 = RingConfig.truncated(2, 2)


def test_ring_modulus():
    assert ring_modulus(V2, 3) is None
    assert ring_modulus(W2, 2) == 8
    with pytest.raises(ValueError):
        ring_modulus(RingConfig.mixed(2, 1, 1), 0)


def test_decompose_cyclic():
    M = PresentedModule.cyclic(V2, Fraction(3, 4))
    assert M.free_rank() == 0
    assert [e.as_fraction() for e in M.decompose_exponents()] == [
        Fraction(3, 4)]


def test_decompose_mixed_factors():
    M = PresentedModule.from_factors(
        V2, 1, [PExp(2, 1, 1), PExp(2, 3, 0)], free_rank=2)
    assert M.free_rank() == 2
    assert sorted(e.as_fraction() for e in M.decompose_exponents()) == [
        Fraction(1, 2), Fraction(3)]


def test_at_level_preserves_class():
    M = PresentedModule.from_factors(V2, 1, [PExp(2, 1, 1)], 1)
    assert iso_test(M, M.at_level(3))


def test_direct_sum_and_tensor():
    A = PresentedModule.cyclic(V2, Fraction(1, 2))
    B = PresentedModule.cyclic(V2, Fraction(1, 4))
    S = direct_sum(A, B)
    assert sorted(e.as_fraction() for e in S.decompose_exponents()) == [
        Fraction(1, 4), Fraction(1, 2)]
    # R/a tensor R/b = R/min(a,b)
    T = tensor(A, B)
    assert [e.as_fraction() for e in T.decompose_exponents()] == [
        Fraction(1, 4)]


def test_hom_and_ext_cyclic():
    # Hom(R/a, R/b) = R/min(a,b) = Ext^1(R/a, R/b) over the PID
    A = PresentedModule.cyclic(V2, Fraction(1))
    B = PresentedModule.cyclic(V2, Fraction(1, 2))
    H = hom_module(A, B)
    E = ext(A, B, 1)
    for X in (H, E):
        assert [e.as_fraction() for e in X.decompose_exponents()] == [
            Fraction(1, 2)]
    # Hom(free, N) = N, Ext^1(free, N) = 0
    F = PresentedModule.free(V2, 0, 1)
    assert iso_test(hom_module(F, B), B)
    assert ext(F, B, 1).is_zero_module()


def test_tor_cyclic():
    A = PresentedModule.cyclic(V2, Fraction(1))
    B = PresentedModule.cyclic(V2, Fraction(1, 2))
    T1 = tor(A, B, 1)
    assert [e.as_fraction() for e in T1.decompose_exponents()] == [
        Fraction(1, 2)]
    assert tor(PresentedModule.free(V2, 0, 2), B, 1).is_zero_module()


def test_kernel_cokernel_image_of_scalar():
    M = PresentedModule.cyclic(V2, Fraction(1))
    f = ModuleMap.scalar(M, Fraction(1, 2))
    K, _ = kernel_map(f)
    C, _ = cokernel_map(f)
    I, _ = image_map(f)
    assert [e.as_fraction() for e in K.decompose_exponents()] == [
        Fraction(1, 2)]
    assert [e.as_fraction() for e in C.decompose_exponents()] == [
        Fraction(1, 2)]
    assert [e.as_fraction() for e in I.decompose_exponents()] == [
        Fraction(1, 2)]


def test_map_composition_and_rank_nullity():
    M = PresentedModule.free(V2, 1, 2)
    mat = PolyMatrix(2, 2, 2, [[[0, 1], [1]], [[], [0, 1]]])
    f = ModuleMap(M, M, mat, check=False)
    K, _ = kernel_map(f)
    I, _ = image_map(f)
    # free source: rank = dim ker + dim im over the fraction field
    assert K.free_rank() + I.free_rank() == 2


def test_map_level_lifting():
    M = PresentedModule.cyclic(V2, Fraction(1), level=1)
    f = ModuleMap.scalar(M, Fraction(1, 2))
    g = f.at_level(3)
    assert g.source.level == 3
    assert iso_test(kernel_map(f)[0], kernel_map(g)[0])


def test_iso_test_distinguishes():
    A = PresentedModule.cyclic(V2, Fraction(1, 2))
    B = PresentedModule.cyclic(V2, Fraction(1, 4))
    assert not iso_test(A, B)
    assert iso_test(A, PresentedModule.cyclic(V2, Fraction(1, 2), level=3))


def test_truncated_clamps_exponents():
    M = PresentedModule.cyclic(W2, Fraction(3, 2))
    N = PresentedModule.free(W2, 1, 1)
    # over V/(t^2) the free module itself has annihilator t^2
    assert N.free_rank() == 1
    assert [e.as_fraction() for e in M.decompose_exponents()] == [
        Fraction(3, 2)]


def test_base_change_perfect_to_truncated():
    M = PresentedModule.cyclic(V2, Fraction(3))
    N = base_change(M, W2)
    assert N.cfg == W2
    # t^3 = 0 already in V/(t^2): the class becomes the full cyclic module
    assert N.free_rank() + len(N.decompose_exponents()) == 1
