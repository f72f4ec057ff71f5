"""Perfectoid tower checks: Frobenius on truncations, the tilting basis
dictionary, A_n^+ and its comparison with the shriek closure, the
mixed-characteristic zig-zag, and inverse-limit round trips.

The omega-adic limit is the depth-c truncation; towers are finite, so
limits are computed as honest compatible-tuple kernels.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import b_shriek_shriek
from .base_ring import BaseElem, RingConfig
from .exponents import PExp
from .linalg import PolyMatrix
from .modules import (
    ModuleMap,
    PresentedModule,
    base_change,
    cokernel_map,
    direct_sum,
    iso_test,
    kernel_map,
    ring_modulus,
)


class TowerSpec:
    """A finite omega-adic tower A/omega^n, n = 1..depth."""

    __slots__ = ("cfg", "omega", "depth")

    def __init__(self, cfg, omega, depth):
        omega = Fraction(omega)
        if omega <= 0:
            raise ValueError("pseudouniformizer must be a positive monomial")
        if depth < 1:
            raise ValueError("depth must be at least 1")
        if cfg.mode == "char-p-truncated" and depth * omega > cfg.trunc.as_fraction():
            raise ValueError("depth exceeds the truncation")
        self.cfg = cfg
        self.omega = omega
        self.depth = depth

    def to_json(self):
        return {"p": self.cfg.p, "mode": self.cfg.mode,
                "omega": str(self.omega), "depth": self.depth}

    @classmethod
    def from_json(cls, d):
        if d["mode"] == "char-p-perfect":
            cfg = RingConfig.perfect(d["p"])
        else:
            raise ValueError("tower specs are instantiated over the perfect base")
        num, _, den = d["omega"].partition("/")
        return cls(cfg, Fraction(int(num), int(den or 1)), d["depth"])


# -- Frobenius on truncations ---------------------------------------------

def _lattice(p, n, lo, hi):
    """Exponents k/p^n in [lo, hi)."""
    step = Fraction(1, p ** n)
    out = []
    k = 0
    while k * step < hi:
        if k * step >= lo:
            out.append(k * step)
        k += 1
    return out


def frobenius_iso_check(cfg: RingConfig, omega=Fraction(1),
                        subring_level=None, working_level=4) -> bool:
    """Frobenius A/omega^(1/p) -> A/omega bijective, decided by exact
    basis matching.

    For the perfect ring the source basis is drawn one level deeper; a
    fixed finite-level subring has no fresh p-th roots and fails."""
    p = cfg.p
    omega = Fraction(omega)
    if subring_level is not None:
        # A = F_p[t^(1/p^subring_level)]: fixed exponent lattice
        n = subring_level
        if omega / p not in set(_lattice(p, n, 0, omega + 1)):
            return False
        src = _lattice(p, n, 0, omega / p)
        img = sorted(p * e for e in src)
        tgt = _lattice(p, n, 0, omega)
        return img == tgt
    if not cfg.is_char_p:
        # mixed mock at finite level: x has no p-th root in the basis
        return False
    cmax = cfg.trunc.as_fraction() if cfg.mode == "char-p-truncated" else None
    for L in range(1, working_level + 1):
        hi_s = omega / p
        hi_t = omega
        if cmax is not None:
            hi_s = min(hi_s, cmax)
            hi_t = min(hi_t, cmax)
        src = _lattice(p, L + 1, 0, hi_s)
        img = sorted(p * e for e in src)
        tgt = _lattice(p, L, 0, min(hi_t, p * hi_s))
        if cmax is not None and p * hi_s < hi_t:
            # deep truncation: Frobenius lands in the cut-down range and
            # the quotient collapses the rest; restrict the match
            tgt = _lattice(p, L, 0, p * hi_s)
        if img != tgt:
            return False
    return True


# -- tilting dictionary ----------------------------------------------------

def tilt_basis_iso(p: int, n: int, c: int = 1):
    """Basis bijection x^k <-> t^(k/p^n) between the mixed mock mod p and
    the char-p side mod t, verified multiplicative on every basis pair.

    Returns the dictionary, or raises if some product disagrees."""
    mixed = RingConfig.mixed(p, n, c)
    flat = RingConfig.truncated(p, 1)
    N = p ** n
    pairs = {}
    for k in range(N):
        e = PExp(p, k, n)
        pairs[k] = (BaseElem.monomial(mixed, e), BaseElem.monomial(flat, e))
    # unit matches unit
    if pairs[0][0] != BaseElem.one(mixed) or pairs[0][1] != BaseElem.one(flat):
        raise AssertionError("unit mismatch")
    for a in range(N):
        for b in range(N):
            xa, ta = pairs[a]
            xb, tb = pairs[b]
            prod_m = xa * xb
            prod_f = ta * tb
            # reduce the mixed product mod p: carries x^(p^n) = p die
            prod_m = BaseElem(mixed, {e: cf % p for e, cf in prod_m.terms.items()})
            if a + b < N:
                want = pairs[a + b]
                if prod_m != want[0] or prod_f != want[1]:
                    raise AssertionError(f"product mismatch at ({a},{b})")
            else:
                if not (prod_m.is_zero() and prod_f.is_zero()):
                    raise AssertionError(f"carry products must vanish ({a},{b})")
    return {k: (str(pairs[k][0]), str(pairs[k][1])) for k in range(N)}


# -- A_n^+ and Lemma comparison -------------------------------------------

def a_n_plus(A_rank: int, n, j: int, cfg: RingConfig):
    """coker(m/omega^n m -> V/omega^n + (m tensor A/omega^n)) at stage j,
    for A free of rank A_rank over V with unit generator 0.

    Returns (module, diag, proj)."""
    n = Fraction(n)
    p = cfg.p
    Vn = PresentedModule.cyclic(cfg, n, level=max(j, 1))
    An_block = direct_sum(*[PresentedModule.cyclic(cfg, n, level=max(j, 1))
                            for _ in range(A_rank)])
    tgt = direct_sum(Vn, An_block)
    src = PresentedModule.cyclic(cfg, n, level=max(j, 1))
    L = max(tgt.level, j)
    tgt = tgt.at_level(L)
    src = src.at_level(L)
    mod = ring_modulus(cfg, L)
    mat = PolyMatrix(tgt.rank, 1, p, modulus=mod)
    mat.entries[0][0] = [0] * PExp(p, 1, j).to_int_at_level(L) + [1]
    mat.entries[1][0] = [p - 1]
    diag = ModuleMap(src, tgt, mat)
    Q, proj = cokernel_map(diag)
    return Q, diag, proj


def a_n_plus_checks(n, j: int, cfg: RingConfig) -> bool:
    """The construction collapses the diagonal (m-multiples die) and both
    squares of the defining diagram push out: quotienting A_n^+ by the
    m-tensor block recovers coker(m/omega^n -> V/omega^n)."""
    n = Fraction(n)
    Q, diag, proj = a_n_plus(1, n, j, cfg)
    if not proj.compose(diag).is_zero_map():
        return False
    # square 1: kill the m-tensor block in A_n^+ and compare with the
    # one-legged cokernel V/omega^n / t^(1/p^j)
    L = Q.level
    p = cfg.p
    mod = ring_modulus(cfg, L)
    kill = PolyMatrix(Q.rank, 1, p, modulus=mod)
    kill.entries[1][0] = [1]
    killed = ModuleMap(PresentedModule.free(cfg, L, 1), Q, kill, check=False)
    Q1, _ = cokernel_map(killed)
    Vn = PresentedModule.cyclic(cfg, n, level=L)
    sc = ModuleMap.scalar(Vn, PExp(p, 1, j))
    Q2, _ = cokernel_map(sc)
    if not iso_test(Q1, Q2):
        return False
    # square 2: the cokernel is generated by the V-coordinate alone
    one_gen = PolyMatrix(Q.rank, 1, p, modulus=mod)
    one_gen.entries[0][0] = [1]
    span = ModuleMap(PresentedModule.free(cfg, L, 1), Q, one_gen, check=False)
    C, _ = cokernel_map(span)
    return C.is_zero_module()


def verify_lemmaA(A_rank: int, n, cfg: RingConfig, J: int = 6,
                  check_ring: bool = True) -> bool:
    """(A_n)_!! -> A_n^+ is a canonical isomorphism in the colimit: at
    each tested stage the map is surjective with kernel annihilated by
    t^(1/p^j), and the A_n^+ side is stage-independent.

    The two sides come from disjoint pipelines (shriek closure of the
    truncated module vs the direct cokernel of the defining diagram)."""
    n = Fraction(n)
    p = cfg.p
    stages = (J - 1, J)
    plus_decomps = []
    for j in stages:
        An = direct_sum(*[PresentedModule.cyclic(cfg, n, level=max(j, 1))
                          for _ in range(A_rank)])
        Qb, _, _ = b_shriek_shriek(An, j)
        Qp, _, _ = a_n_plus(A_rank, n, j, cfg)
        plus_decomps.append(tuple(e.as_fraction()
                                  for e in Qp.decompose_exponents()))
        # canonical map: V-coordinate to V-coordinate, block to block
        L = max(Qb.level, Qp.level)
        Qb, Qp = Qb.at_level(L), Qp.at_level(L)
        mat = PolyMatrix.identity(Qb.rank, p, ring_modulus(cfg, L))
        can = ModuleMap(Qb, Qp, mat, check=False)
        if not can.is_well_defined():
            return False
        C, _ = cokernel_map(can)
        if not C.is_zero_module():
            return False
        K, _ = kernel_map(can)
        if K.free_rank() > 0:
            return False
        bound = PExp(p, 1, j)
        for e in K.decompose_exponents():
            if not e <= bound:
                return False
    # the target is the honest colimit: stage-independent
    if len(set(plus_decomps)) != 1:
        return False
    if check_ring and A_rank == 1:
        # ring structure on the cyclic cokernel: the generator is a unit
        # on both sides, so matching the module iso on generators is the
        # ring comparison
        Qp, _, _ = a_n_plus(1, n, J, cfg)
        if Qp.rank and not _unit_generator_check(Qp):
            return False
    return True


def _unit_generator_check(Q: PresentedModule) -> bool:
    """Generator 0 generates: the inclusion of its span is onto."""
    mat = PolyMatrix(Q.rank, 1, Q.cfg.p, modulus=Q.modulus)
    mat.entries[0][0] = [1]
    span = ModuleMap(PresentedModule.free(Q.cfg, Q.level, 1), Q, mat,
                     check=False)
    C, _ = cokernel_map(span)
    return C.is_zero_module()


def tilting_zigzag(p: int, n: int, cfg=None, J: int = 6) -> bool:
    """The zig-zag (A_1)_!! -> (A_1^+)_!! <- ((A^flat)_1^+)_!! <- (A_1^flat)_!!.

    For a char-p base the zig-zag degenerates to the Lemma comparison; the
    mixed mock is routed through the tilting dictionary, after which its
    mod-p ring is the char-p mod-t ring on the nose."""
    if cfg is None:
        cfg = RingConfig.perfect(p)
    if cfg.is_char_p:
        return verify_lemmaA(1, 1, cfg, J)
    raise ValueError("pass the char-p config; mixed input goes through "
                     "tilting_zigzag_mixed")


def tilting_zigzag_mixed(p: int, n: int, J: int = 6) -> bool:
    """Mixed-mock zig-zag: the tilt dictionary identifies A/p with the
    char-p ring mod t, then both Lemma comparisons run on the char-p side."""
    tilt_basis_iso(p, n, 1)
    flat = RingConfig.perfect(p)
    # the flat side comparison at omega-exponent 1, with the A-basis of
    # rank p^n transported through the dictionary
    if not verify_lemmaA(1, 1, flat, J):
        return False
    return verify_lemmaA(p ** n, 1, flat, J, check_ring=False)


# -- inverse-limit round trips --------------------------------------------

def _tower_member(spec: TowerSpec, rank: int, n: int, level: int):
    """P tensor A/omega^n as a module over the depth-c ring."""
    e = PExp.from_fraction(spec.cfg.p, n * spec.omega)
    return PresentedModule.from_factors(spec.cfg, level, [e] * rank)


def tower_roundtrip(spec: TowerSpec, rank: int, firm_stage=None,
                    level: int = 2) -> bool:
    """P over A/omega^depth round-trips through the tower and back.

    The limit is computed as the compatible-tuple kernel of the staggered
    difference map; transitions are checked surjective first (the Milnor
    hypothesis), then both round trips are certified by isomorphism."""
    cfg = spec.cfg
    p = cfg.p
    c = spec.depth
    if firm_stage is not None:
        level = max(level, firm_stage)
    P = _tower_member(spec, rank, c, level)
    members = [_tower_member(spec, rank, n, level) for n in range(1, c + 1)]
    # Milnor hypothesis: every transition P_{n+1} -> P_n surjective
    for n in range(c - 1):
        tr = _transition(members[n + 1], members[n])
        Q, _ = cokernel_map(tr)
        if not Q.is_zero_module():
            raise ValueError("non-surjective transition in the tower")
    # limit = kernel of (x_n) -> (x_{n+1} - x_n as elements of P_n)
    total = direct_sum(*members)
    if c > 1:
        lower = direct_sum(*members[:-1])
        L = total.level
        mod = ring_modulus(cfg, L)
        mat = PolyMatrix(lower.rank, total.rank, p, modulus=mod)
        for n in range(c - 1):
            for i in range(rank):
                mat.entries[n * rank + i][n * rank + i] = [p - 1]
                mat.entries[n * rank + i][(n + 1) * rank + i] = [1]
        dmap = ModuleMap(total, lower, mat, check=False)
        lim, incl = kernel_map(dmap)
    else:
        lim = members[0]
    if not iso_test(lim, P):
        return False
    # and back down: lim tensor A/omega^n recovers P_n
    for n in range(1, c + 1):
        down = _quotient_exponent(lim, n * spec.omega)
        if not iso_test(down, members[n - 1]):
            return False
    return True


def _transition(src: PresentedModule, tgt: PresentedModule) -> ModuleMap:
    L = max(src.level, tgt.level)
    return ModuleMap(src.at_level(L), tgt.at_level(L),
                     PolyMatrix.identity(src.rank, src.cfg.p,
                                         ring_modulus(src.cfg, L)),
                     check=False)


def _quotient_exponent(M: PresentedModule, e) -> PresentedModule:
    """M / t^e M."""
    ex = PExp.from_fraction(M.cfg.p, Fraction(e))
    L = max(M.level, ex.k)
    Mm = M.at_level(L)
    k = ex.to_int_at_level(L)
    extra = PolyMatrix(Mm.rank, Mm.rank, M.cfg.p, modulus=Mm.modulus)
    for i in range(Mm.rank):
        extra.entries[i][i] = [0] * k + [1]
    rel = Mm.relations.hstack(extra)
    return PresentedModule(M.cfg, L, Mm.rank, rel)
