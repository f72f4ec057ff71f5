from fractions import Fraction

import pytest

from almostalg.base_ring import RingConfig
from almostalg.tower import (
    TowerSpec,
    a_n_plus,
    a_n_plus_checks,
    frobenius_iso_check,
    tilt_basis_iso,
    tilting_zigzag,
    tilting_zigzag_mixed,
    tower_roundtrip,
    verify_lemmaA,
)

V2 = RingConfig.perfect(2)
V3 = RingConfig.perfect(3)


def test_frobenius_iso_on_perfect_rings():
    for cfg in (V2, V3, RingConfig.truncated(2, 2), RingConfig.truncated(3, 1)):
        assert frobenius_iso_check(cfg)


def test_frobenius_fails_on_fixed_subring():
    # F_p[t] itself is not perfect: Frobenius is not surjective
    assert not frobenius_iso_check(V2, subring_level=0)
    assert not frobenius_iso_check(V3, subring_level=1)


def test_tilt_basis_tables():
    for p in (2, 3):
        for n in (1, 2, 3):
            table = tilt_basis_iso(p, n)
            assert len(table) == p ** n


def test_tilt_basis_truncation_two():
    table = tilt_basis_iso(2, 2, c=2)
    assert len(table) == 4


def test_a_n_plus_shape():
    # A_n^+ = V/(t^n), independent of the stage
    for n in (1, 2):
        for j in (3, 4):
            Q, diag, proj = a_n_plus(1, n, j, V2)
            assert Q.free_rank() == 0
            assert [e.as_fraction() for e in Q.decompose_exponents()] == [
                Fraction(n)]


def test_a_n_plus_square_checks():
    for n in (1, 2, 3):
        assert a_n_plus_checks(n, 4, V2)


def test_lemma_a_pipelines():
    for p in (2, 3):
        cfg = RingConfig.perfect(p)
        for n in (1, 2):
            assert verify_lemmaA(1, n, cfg, J=5)
        assert verify_lemmaA(p, 1, cfg, J=5, check_ring=False)


def test_tilting_zigzag():
    for p in (2, 3):
        assert tilting_zigzag(p, 1, None, 5)
        assert tilting_zigzag_mixed(p, 2, 5)


def test_tower_roundtrip_grid():
    for p in (2, 3):
        for rank in (1, 2, 3, 4):
            for depth in (1, 2, 3, 4):
                spec = TowerSpec(RingConfig.perfect(p), 1, depth)
                assert tower_roundtrip(spec, rank), (p, rank, depth)


def test_tower_roundtrip_with_firm_twist():
    spec = TowerSpec(V2, 1, 3)
    assert tower_roundtrip(spec, 2, firm_stage=3)


def test_tower_spec_json():
    spec = TowerSpec(V3, 1, 4)
    again = TowerSpec.from_json(spec.to_json())
    assert again.cfg == spec.cfg and again.depth == spec.depth
