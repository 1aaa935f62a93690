"""2-biproducts of objects in 2Vect.

The 2-biproduct of ``n`` and ``m`` is ``n + m``.  Its projections and
injections are 0/1 grids that carry the zero space as an explicit
dimension-0 component off the diagonal, so composites such as ``p_A i_A``
come out with dimension-0 components and the weakening 2-isomorphisms are
honest normalizers rather than identities.

Every construction here (mediators, the universal 2-morphism, the
reconstruction formula, the canonical equivalence) is assembled from
whiskering, vertical composition and the structural isos of
:mod:`tensorcat.twovect`, and then checked by exact evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .twovect import (
    FIRST, SECOND, CompositionError, OneMor, TwoMor,
    add_two, associator, associator_inv, copair_two, distribute_left, distribute_right,
    hcompose1, id_one, id_two, inverse_two, is_iso, local_inj, local_proj, normalize,
    oplus_one, oplus_two, transpose_two, vcompose2, whisker_left, whisker_right,
    zero_one, zero_two,
)


def box_obj(n: int, m: int) -> int:
    return n + m


def box_proj(n: int, m: int, side: int) -> OneMor:
    """``p_A : n + m -> n`` (side 1) or ``p_B : n + m -> m`` (side 2)."""
    if side == FIRST:
        rows, shift = n, 0
    elif side == SECOND:
        rows, shift = m, n
    else:
        raise ValueError(f"side must be 1 or 2, got {side!r}")
    return OneMor(n + m, rows, [[(1,) if j == k + shift else (0,) for j in range(n + m)]
                                for k in range(rows)])


def box_inj(n: int, m: int, side: int) -> OneMor:
    """``i_A : n -> n + m`` (side 1) or ``i_B : m -> n + m`` (side 2)."""
    p = box_proj(n, m, side)
    return OneMor(p.tgt, p.src, [[p[k, j] for k in range(p.tgt)] for j in range(p.src)])


@dataclass(frozen=True)
class BiproductWitness:
    n: int
    m: int
    p_A: OneMor
    p_B: OneMor
    i_A: OneMor
    i_B: OneMor
    theta_A: TwoMor   # p_A i_A => id_A
    theta_B: TwoMor   # p_B i_B => id_B
    theta_AB: TwoMor  # p_A i_B => 0
    theta_BA: TwoMor  # p_B i_A => 0
    theta_P: TwoMor   # i_A p_A (+) i_B p_B => id_P

    @property
    def l(self) -> OneMor:
        """``i_A p_A (+) i_B p_B``, the source of ``theta_P``."""
        return self.theta_P.src


def _normalizer_onto(f: OneMor, target: OneMor) -> TwoMor:
    nf, fwd, _ = normalize(f)
    if nf != target:
        raise CompositionError(f"{f!r} does not normalize to {target!r}")
    return fwd


def make_witness(n: int, m: int) -> BiproductWitness:
    p_A, p_B = box_proj(n, m, FIRST), box_proj(n, m, SECOND)
    i_A, i_B = box_inj(n, m, FIRST), box_inj(n, m, SECOND)
    P = n + m
    l = oplus_one(hcompose1(i_A, p_A), hcompose1(i_B, p_B))
    return BiproductWitness(
        n, m, p_A, p_B, i_A, i_B,
        theta_A=_normalizer_onto(hcompose1(p_A, i_A), id_one(n)),
        theta_B=_normalizer_onto(hcompose1(p_B, i_B), id_one(m)),
        theta_AB=zero_two(hcompose1(p_A, i_B), zero_one(m, n)),
        theta_BA=zero_two(hcompose1(p_B, i_A), zero_one(n, m)),
        theta_P=_normalizer_onto(l, id_one(P)),
    )


# ------------------------------------------------------------------ checking

@dataclass
class Report:
    """Named exact equations, each either holding or failing at listed entries."""

    results: dict[str, list] = dc_field(default_factory=dict)

    def check(self, name: str, lhs, rhs) -> bool:
        self.results[name] = diff(lhs, rhs)
        return not self.results[name]

    def require(self, name: str, ok: bool, detail: str = "") -> bool:
        self.results[name] = [] if ok else [detail or "failed"]
        return ok

    @property
    def ok(self) -> bool:
        return all(not v for v in self.results.values())

    def failures(self) -> dict[str, list]:
        return {k: v for k, v in self.results.items() if v}


def diff(lhs: TwoMor, rhs: TwoMor) -> list:
    """Where two 2-morphisms differ: typing problems or entry coordinates."""
    if lhs.src != rhs.src:
        return ["source 1-morphisms differ"]
    if lhs.tgt != rhs.tgt:
        return ["target 1-morphisms differ"]
    return [(k, j) for k, j in lhs.src.positions() if lhs[k, j] != rhs[k, j]]


def _mixed_term(p_X: OneMor, mid_l: OneMor, i_Y: OneMor):
    """Structural iso ``p_X ((i_A p_A (+) i_B p_B) i_Y) => (p_X i_A)(p_A i_Y) (+) (p_X i_B)(p_B i_Y)``."""
    ia_pa, ib_pb = mid_l
    i_A, p_A = ia_pa
    i_B, p_B = ib_pb
    l = oplus_one(hcompose1(i_A, p_A), hcompose1(i_B, p_B))
    # (l) i_Y => (i_A p_A) i_Y (+) (i_B p_B) i_Y, whiskered by p_X
    step1 = whisker_left(p_X, distribute_right(hcompose1(i_A, p_A), hcompose1(i_B, p_B), i_Y))
    first = hcompose1(hcompose1(i_A, p_A), i_Y)
    second = hcompose1(hcompose1(i_B, p_B), i_Y)
    step2 = distribute_left(p_X, first, second)

    def regroup(i_Z, p_Z):
        # p_X ((i_Z p_Z) i_Y) => p_X (i_Z (p_Z i_Y)) => (p_X i_Z)(p_Z i_Y)
        a = whisker_left(p_X, associator(i_Z, p_Z, i_Y))
        b = associator_inv(p_X, i_Z, hcompose1(p_Z, i_Y))
        return vcompose2(b, a)

    step3 = oplus_two(regroup(i_A, p_A), regroup(i_B, p_B))
    assert step1.src == hcompose1(p_X, hcompose1(l, i_Y))
    return vcompose2(step3, vcompose2(step2, step1))


def check_biproduct_conditions(w: BiproductWitness) -> Report:
    """Verify the defining equations of a weak 2-biproduct for ``w``.

    ``p_A theta_P i_A`` must equal the row ``((p_A i_A) theta_A, 0)`` once its
    source is split along ``l = i_A p_A (+) i_B p_B``, and symmetrically for
    ``B``.  Also checked: every theta is a 2-iso with the right typing, the
    cross thetas and ``1_{p_A i_B}`` are zero, and
    ``(p_A i_A) theta_A = theta_A (p_A i_A)``.
    """
    rep = Report()
    pa_ia = hcompose1(w.p_A, w.i_A)
    pb_ib = hcompose1(w.p_B, w.i_B)
    pa_ib = hcompose1(w.p_A, w.i_B)
    pb_ia = hcompose1(w.p_B, w.i_A)
    P = w.n + w.m

    rep.require("theta_A typing", w.theta_A.src == pa_ia and w.theta_A.tgt == id_one(w.n))
    rep.require("theta_B typing", w.theta_B.src == pb_ib and w.theta_B.tgt == id_one(w.m))
    rep.require("theta_AB typing", w.theta_AB.src == pa_ib and w.theta_AB.tgt == zero_one(w.m, w.n))
    rep.require("theta_BA typing", w.theta_BA.src == pb_ia and w.theta_BA.tgt == zero_one(w.n, w.m))
    rep.require("theta_P typing", w.theta_P.tgt == id_one(P) and w.theta_P.src == w.l)
    for name in ("theta_A", "theta_B", "theta_AB", "theta_BA", "theta_P"):
        theta = getattr(w, name)
        if not is_iso(theta):
            rep.require(f"{name} invertible", False, "singular entry")
            continue
        inv = inverse_two(theta)
        rep.check(f"{name} inverse (left)", vcompose2(inv, theta), id_two(theta.src))
        rep.check(f"{name} inverse (right)", vcompose2(theta, inv), id_two(theta.tgt))

    rep.require("theta_AB is zero", w.theta_AB.is_zero())
    rep.require("theta_BA is zero", w.theta_BA.is_zero())
    rep.check("1_{p_A i_B} = 0", id_two(pa_ib), zero_two(pa_ib, pa_ib))
    rep.check("1_{p_B i_A} = 0", id_two(pb_ia), zero_two(pb_ia, pb_ia))
    rep.check("(p_A i_A) theta_A = theta_A (p_A i_A)",
              whisker_left(pa_ia, w.theta_A), whisker_right(w.theta_A, pa_ia))
    rep.check("(p_B i_B) theta_B = theta_B (p_B i_B)",
              whisker_left(pb_ib, w.theta_B), whisker_right(w.theta_B, pb_ib))

    mid = ((w.i_A, w.p_A), (w.i_B, w.p_B))
    for label, p_X, i_X, pi_ix, theta_X, slot in (
            ("A", w.p_A, w.i_A, pa_ia, w.theta_A, FIRST),
            ("B", w.p_B, w.i_B, pb_ib, w.theta_B, SECOND)):
        lhs = whisker_left(p_X, whisker_right(w.theta_P, i_X))
        split = _mixed_term(p_X, mid, i_X)
        first, second = _summands(p_X, i_X, w)
        diag = whisker_left(pi_ix, theta_X)
        if slot == FIRST:
            row = copair_two(diag, zero_two(second, pi_ix))
        else:
            row = copair_two(zero_two(first, pi_ix), diag)
        rep.check(f"p_{label} theta_P i_{label} = diagonal form", lhs, vcompose2(row, split))
    return rep


def _summands(p_X: OneMor, i_X: OneMor, w: BiproductWitness) -> tuple[OneMor, OneMor]:
    return (hcompose1(hcompose1(p_X, w.i_A), hcompose1(w.p_A, i_X)),
            hcompose1(hcompose1(p_X, w.i_B), hcompose1(w.p_B, i_X)))


# ---------------------------------------------------- the universal property

@dataclass(frozen=True)
class Cone:
    apex: int
    f: OneMor  # apex -> n
    g: OneMor  # apex -> m

    def __post_init__(self):
        if self.f.src != self.apex or self.g.src != self.apex:
            raise CompositionError("cone legs must start at the apex")


def _check_cone(w: BiproductWitness, c: Cone) -> None:
    if c.f.tgt != w.n or c.g.tgt != w.m:
        raise CompositionError(f"cone legs land in {c.f.tgt}, {c.g.tgt}; expected {w.n}, {w.m}")


def _leg_iso(w: BiproductWitness, b_f: OneMor, b_g: OneMor, side: int) -> TwoMor:
    """``p_X (i_A f (+) i_B g) => f`` (side 1, ``X = A``) or ``=> g`` (side 2)."""
    p_X = w.p_A if side == FIRST else w.p_B
    spread = distribute_left(p_X, hcompose1(w.i_A, b_f), hcompose1(w.i_B, b_g))
    pick = local_proj(hcompose1(p_X, hcompose1(w.i_A, b_f)),
                      hcompose1(p_X, hcompose1(w.i_B, b_g)), side)
    i_X, leg, theta = (w.i_A, b_f, w.theta_A) if side == FIRST else (w.i_B, b_g, w.theta_B)
    regroup = associator_inv(p_X, i_X, leg)
    return vcompose2(whisker_right(theta, leg), vcompose2(regroup, vcompose2(pick, spread)))


def product_mediator(w: BiproductWitness, c: Cone) -> tuple[OneMor, TwoMor, TwoMor]:
    """``b = i_A f (+) i_B g`` with ``xi_A: p_A b => f`` and ``xi_B: p_B b => g``.

    Both xis are checked to be 2-isos.
    """
    _check_cone(w, c)
    b = oplus_one(hcompose1(w.i_A, c.f), hcompose1(w.i_B, c.g))
    xi_A = _leg_iso(w, c.f, c.g, FIRST)
    xi_B = _leg_iso(w, c.f, c.g, SECOND)
    for xi in (xi_A, xi_B):
        if not is_iso(xi):
            raise ArithmeticError("mediator leg is not invertible")
    return b, xi_A, xi_B


def mediator_gamma(w: BiproductWitness, c: Cone, c_prime: Cone,
                   Sigma_A: TwoMor, Sigma_B: TwoMor) -> TwoMor:
    """The 2-morphism ``gamma = nu_1 (i_A Sigma_A) pi_1 + nu_2 (i_B Sigma_B) pi_2 : b => b'``."""
    _check_cone(w, c)
    _check_cone(w, c_prime)
    if Sigma_A.src != c.f or Sigma_A.tgt != c_prime.f:
        raise CompositionError("Sigma_A must go from f to f'")
    if Sigma_B.src != c.g or Sigma_B.tgt != c_prime.g:
        raise CompositionError("Sigma_B must go from g to g'")
    top = whisker_left(w.i_A, Sigma_A)
    bottom = whisker_left(w.i_B, Sigma_B)
    return add_two(
        vcompose2(local_inj(top.tgt, bottom.tgt, FIRST), vcompose2(top, local_proj(top.src, bottom.src, FIRST))),
        vcompose2(local_inj(top.tgt, bottom.tgt, SECOND), vcompose2(bottom, local_proj(top.src, bottom.src, SECOND))),
    )


def universal_condition(w: BiproductWitness, c: Cone, c_prime: Cone,
                        Sigma_A: TwoMor, Sigma_B: TwoMor, gamma: TwoMor) -> Report:
    """``p_A gamma = xi'_A^-1 Sigma_A xi_A`` and the same for ``B``."""
    rep = Report()
    _, xi_A, xi_B = product_mediator(w, c)
    _, xi2_A, xi2_B = product_mediator(w, c_prime)
    rep.check("p_A gamma = xi'_A^-1 . Sigma_A . xi_A", whisker_left(w.p_A, gamma),
              vcompose2(inverse_two(xi2_A), vcompose2(Sigma_A, xi_A)))
    rep.check("p_B gamma = xi'_B^-1 . Sigma_B . xi_B", whisker_left(w.p_B, gamma),
              vcompose2(inverse_two(xi2_B), vcompose2(Sigma_B, xi_B)))
    return rep


def reconstruct_gamma(w: BiproductWitness, gamma_prime: TwoMor) -> TwoMor:
    """``(theta_P h') . (l gamma') . (theta_P^-1 h)`` for ``gamma': h => h'``."""
    h, h2 = gamma_prime.src, gamma_prime.tgt
    if h.tgt != w.n + w.m:
        raise CompositionError("gamma' must land in the 2-biproduct")
    theta_inv = inverse_two(w.theta_P)
    return vcompose2(whisker_right(w.theta_P, h2),
                     vcompose2(whisker_left(w.l, gamma_prime), whisker_right(theta_inv, h)))


def theta_P_on_mediator(w: BiproductWitness, c: Cone) -> Report:
    """Split ``theta_P h`` for ``h = i_A f (+) i_B g`` into its two diagonal pieces.

    Restricted along ``(i_X p_X) h -> l h`` it must equal
    ``nu_X . i_X theta_X leg . pi`` (after regrouping) for ``X = A, B``.
    """
    _check_cone(w, c)
    rep = Report()
    ia_f, ib_g = hcompose1(w.i_A, c.f), hcompose1(w.i_B, c.g)
    h = oplus_one(ia_f, ib_g)
    theta_h = whisker_right(w.theta_P, h)
    ia_pa, ib_pb = hcompose1(w.i_A, w.p_A), hcompose1(w.i_B, w.p_B)
    collect = transpose_two(distribute_right(ia_pa, ib_pb, h))
    for side, i_X, p_X, theta_X, leg, name in (
            (FIRST, w.i_A, w.p_A, w.theta_A, c.f, "A"),
            (SECOND, w.i_B, w.p_B, w.theta_B, c.g, "B")):
        ix_px = ia_pa if side == FIRST else ib_pb
        into_l = vcompose2(collect, local_inj(hcompose1(ia_pa, h), hcompose1(ib_pb, h), side))
        lhs = vcompose2(theta_h, into_l)
        # (i_X p_X) h => (i_X p_X)(i_A f) (+) (i_X p_X)(i_B g) => (i_X p_X)(i_X leg)
        spread = distribute_left(ix_px, ia_f, ib_g)
        own = hcompose1(ix_px, hcompose1(i_X, leg))
        pick = local_proj(hcompose1(ix_px, ia_f), hcompose1(ix_px, ib_g), side)
        # (i_X p_X)(i_X leg) => i_X (p_X (i_X leg)) => i_X ((p_X i_X) leg)
        regroup = vcompose2(whisker_left(i_X, associator_inv(p_X, i_X, leg)),
                            associator(i_X, p_X, hcompose1(i_X, leg)))
        assert regroup.src == own
        core = whisker_left(i_X, whisker_right(theta_X, leg))
        back = local_inj(ia_f, ib_g, side)
        rhs = vcompose2(back, vcompose2(core, vcompose2(regroup, vcompose2(pick, spread))))
        rep.check(f"theta_P h restricted to i_{name} p_{name} h", lhs, rhs)
    return rep


def sigma_rows(w: BiproductWitness) -> tuple[TwoMor, TwoMor]:
    """``Sigma_A = (theta_A p_A, 0) : p_A l => p_A`` and ``Sigma_B = (0, theta_B p_B) : p_B l => p_B``.

    Built as ``pi . lambda`` after splitting ``p_X l`` along the two summands
    of ``l``, where ``lambda`` is ``diag(theta_A p_A, theta_AB p_B)`` (resp.
    ``diag(theta_BA p_A, theta_B p_B)``).
    """
    out = []
    for side, p_X in ((FIRST, w.p_A), (SECOND, w.p_B)):
        spread = distribute_left(p_X, hcompose1(w.i_A, w.p_A), hcompose1(w.i_B, w.p_B))
        pieces = []
        for i_Z, p_Z, theta in ((w.i_A, w.p_A, w.theta_A if side == FIRST else w.theta_BA),
                                (w.i_B, w.p_B, w.theta_AB if side == FIRST else w.theta_B)):
            pieces.append(vcompose2(whisker_right(theta, p_Z), associator_inv(p_X, i_Z, p_Z)))
        lam = oplus_two(pieces[0], pieces[1])
        onto = local_proj(pieces[0].tgt, pieces[1].tgt, side)
        out.append(vcompose2(onto, vcompose2(lam, spread)))
    return out[0], out[1]


def _row_parts(w: BiproductWitness, p_X: OneMor) -> tuple[OneMor, OneMor]:
    return (hcompose1(p_X, hcompose1(w.i_A, w.p_A)), hcompose1(p_X, hcompose1(w.i_B, w.p_B)))


def sigma_report(w: BiproductWitness) -> Report:
    rep = Report()
    Sigma_A, Sigma_B = sigma_rows(w)
    rep.check("Sigma_A = p_A theta_P", Sigma_A, whisker_left(w.p_A, w.theta_P))
    rep.check("Sigma_B = p_B theta_P", Sigma_B, whisker_left(w.p_B, w.theta_P))
    for name, Sigma, p_X, zero_side in (("A", Sigma_A, w.p_A, SECOND), ("B", Sigma_B, w.p_B, FIRST)):
        first, second = _row_parts(w, p_X)
        gather = transpose_two(distribute_left(p_X, hcompose1(w.i_A, w.p_A), hcompose1(w.i_B, w.p_B)))
        off = vcompose2(Sigma, vcompose2(gather, local_inj(first, second, zero_side)))
        rep.require(f"Sigma_{name} off-diagonal half is zero", off.is_zero())
    return rep


# ------------------------------------------------- canonical-equivalence form

@dataclass(frozen=True)
class EquivalenceWitness:
    r: OneMor
    r_prime: OneMor
    xi_prod: TwoMor    # r r' => id
    xi_coprod: TwoMor  # id => r' r
    thetas: dict = dc_field(default_factory=dict)  # (k, j) -> p_k r i_j => delta_kj id


def canonical_equiv(n: int, m: int) -> tuple[EquivalenceWitness, Report]:
    """The canonical 1-morphism ``r`` with its inverse ``r' = i_A p_A (+) i_B p_B``.

    ``r`` is the identity grid on ``n + m``; the components
    ``p_k r i_j => delta_kj id`` are the witness's normalizers and zero maps.
    Both zigzag identities are verified.
    """
    w = make_witness(n, m)
    P = n + m
    r = id_one(P)
    r_prime = w.l
    xi_prod = w.theta_P                 # r r' = l => id
    xi_coprod = inverse_two(w.theta_P)  # id => l = r' r
    projs = {FIRST: w.p_A, SECOND: w.p_B}
    injs = {FIRST: w.i_A, SECOND: w.i_B}
    thetas = {(FIRST, FIRST): w.theta_A, (SECOND, SECOND): w.theta_B,
              (FIRST, SECOND): w.theta_AB, (SECOND, FIRST): w.theta_BA}
    ew = EquivalenceWitness(r, r_prime, xi_prod, xi_coprod, thetas)

    rep = Report()
    for (k, j), theta in thetas.items():
        rep.require(f"theta_{k}{j}: p_{k} r i_{j} source",
                    theta.src == hcompose1(projs[k], hcompose1(r, injs[j])))
        rep.require(f"theta_{k}{j} invertible", is_iso(theta))
    rep.require("xi_prod typing", xi_prod.src == hcompose1(r, r_prime) and xi_prod.tgt == id_one(P))
    rep.require("xi_coprod typing", xi_coprod.src == id_one(P) and xi_coprod.tgt == hcompose1(r_prime, r))
    rep.check("(r' xi_prod) (xi_coprod r') = 1_r'",
              vcompose2(whisker_left(r_prime, xi_prod), whisker_right(xi_coprod, r_prime)),
              id_two(r_prime))
    rep.check("(xi_prod r) (r xi_coprod) = 1_r",
              vcompose2(whisker_right(xi_prod, r), whisker_left(r, xi_coprod)),
              id_two(r))
    Sigma_A, Sigma_B = sigma_rows(w)
    rep.check("p_A xi_prod = pi_1 . lambda", whisker_left(w.p_A, xi_prod), Sigma_A)
    rep.check("p_B xi_prod = pi_2 . lambda'", whisker_left(w.p_B, xi_prod), Sigma_B)
    return ew, rep


# ------------------------------------------------- projections are monic

def _split_through(w: BiproductWitness, b: OneMor) -> TwoMor:
    """``l b => i_A (p_A b) (+) i_B (p_B b)``."""
    ia_pa, ib_pb = hcompose1(w.i_A, w.p_A), hcompose1(w.i_B, w.p_B)
    regroup = oplus_two(associator(w.i_A, w.p_A, b), associator(w.i_B, w.p_B, b))
    return vcompose2(regroup, distribute_right(ia_pa, ib_pb, b))


def monic_mediator(w: BiproductWitness, b: OneMor, b_prime: OneMor,
                   Sigma_A: TwoMor, Sigma_B: TwoMor) -> TwoMor:
    """The 2-iso ``gamma: b => b'`` with ``p_A gamma = Sigma_A`` and ``p_B gamma = Sigma_B``."""
    if Sigma_A.src != hcompose1(w.p_A, b) or Sigma_A.tgt != hcompose1(w.p_A, b_prime):
        raise CompositionError("Sigma_A must go from p_A b to p_A b'")
    if Sigma_B.src != hcompose1(w.p_B, b) or Sigma_B.tgt != hcompose1(w.p_B, b_prime):
        raise CompositionError("Sigma_B must go from p_B b to p_B b'")
    if not (is_iso(Sigma_A) and is_iso(Sigma_B)):
        raise ValueError("Sigma_A and Sigma_B must be 2-isomorphisms")
    middle = oplus_two(whisker_left(w.i_A, Sigma_A), whisker_left(w.i_B, Sigma_B))
    lifted = vcompose2(transpose_two(_split_through(w, b_prime)),
                       vcompose2(middle, _split_through(w, b)))
    return vcompose2(whisker_right(w.theta_P, b_prime),
                     vcompose2(lifted, whisker_right(inverse_two(w.theta_P), b)))
