import random

import pytest

from tensorcat import biproduct2 as bp
from tensorcat import field, laws
from tensorcat import twovect as tv
from tensorcat.twovect import FIRST, SECOND, CompositionError


def test_box_object_and_projection_shapes():
    assert bp.box_obj(2, 3) == 5
    assert tv.decat(bp.box_proj(1, 1, FIRST)).mat.tolist() == [[1, 0]]
    p = bp.box_proj(2, 3, SECOND)
    assert (p.src, p.tgt) == (5, 3)
    assert bp.box_inj(2, 3, SECOND).entries == tuple(zip(*p.entries))
    cross = tv.hcompose1(bp.box_proj(2, 1, FIRST), bp.box_inj(2, 1, SECOND))
    assert all(tv.total(cross[k, j]) == 0 for k, j in cross.positions())


def test_witness_for_one_and_one():
    w = bp.make_witness(1, 1)
    # p_A i_A has one extra dimension-0 component, deleted by theta_A
    assert w.theta_A.src[0, 0] == (1, 0)
    assert w.theta_A[0, 0] == field.identity(1)
    assert w.theta_AB == tv.zero_two(w.theta_AB.src, tv.zero_one(1, 1))
    pa_ib = tv.hcompose1(w.p_A, w.i_B)
    assert tv.id_two(pa_ib) == tv.zero_two(pa_ib, pa_ib)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(1, 5)])
def test_conditions_and_sigma_rows(n, m):
    w = bp.make_witness(n, m)
    rep = bp.check_biproduct_conditions(w)
    assert rep.ok, rep.failures()
    assert "(p_A i_A) theta_A = theta_A (p_A i_A)" in rep.results
    assert bp.sigma_report(w).ok


def test_report_names_failing_entries():
    w = bp.make_witness(1, 2)
    broken = tv.scale_two(2, w.theta_P)
    rep = bp.Report()
    rep.check("theta_P", broken, w.theta_P)
    assert not rep.ok and rep.failures()["theta_P"]
    assert bp.diff(w.theta_A, w.theta_B) == ["source 1-morphisms differ"]


def test_cone_onto_first_factor_gives_injection():
    w = bp.make_witness(2, 1)
    b, xi_A, _ = bp.product_mediator(w, bp.Cone(2, tv.id_one(2), tv.zero_one(2, 1)))
    assert b == w.i_A
    assert xi_A == w.theta_A


def _cone_pair(seed):
    rng = random.Random(seed)
    cfg = laws.LawConfig(max_object=2, max_components=2, max_dim=2)
    w = bp.make_witness(rng.randint(1, 2), rng.randint(1, 2))
    X = rng.randint(1, 2)
    f, g = laws.gen_one_mor(rng, cfg, X, w.n), laws.gen_one_mor(rng, cfg, X, w.m)
    f2, g2 = laws.gen_one_mor(rng, cfg, X, w.n), laws.gen_one_mor(rng, cfg, X, w.m)
    return (w, bp.Cone(X, f, g), bp.Cone(X, f2, g2),
            laws.gen_two_mor(rng, cfg, f, f2), laws.gen_two_mor(rng, cfg, g, g2))


@pytest.mark.parametrize("seed", range(10))
def test_mediator_round_trip(seed):
    w, c, c2, SA, SB = _cone_pair(seed)
    b, xi_A, xi_B = bp.product_mediator(w, c)
    assert tv.decat(b).mat == field.vstack([tv.decat(c.f).mat, tv.decat(c.g).mat])
    gamma = bp.mediator_gamma(w, c, c2, SA, SB)
    assert bp.universal_condition(w, c, c2, SA, SB, gamma).ok
    assert bp.reconstruct_gamma(w, gamma) == gamma
    assert bp.theta_P_on_mediator(w, c).ok


def test_identity_sigmas_give_identity_gamma():
    w, c, _, _, _ = _cone_pair(3)
    gamma = bp.mediator_gamma(w, c, c, tv.id_two(c.f), tv.id_two(c.g))
    b, _, _ = bp.product_mediator(w, c)
    assert gamma == tv.id_two(b)
    assert bp.reconstruct_gamma(w, tv.id_two(b)) == tv.id_two(b)


def test_mediator_rejects_non_parallel_sigmas():
    w, c, c2, SA, SB = _cone_pair(1)
    with pytest.raises(CompositionError):
        bp.mediator_gamma(w, c, c2, SB, SA) if SA.src != SB.src else bp.mediator_gamma(
            w, c2, c, SA, SB)
    with pytest.raises(CompositionError):
        bp.product_mediator(w, bp.Cone(c.apex, c.g, c.f)) if w.n != w.m else bp.product_mediator(
            bp.make_witness(w.n + 1, w.m), c)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 4) for m in range(1, 4)])
def test_canonical_equivalence(n, m):
    ew, rep = bp.canonical_equiv(n, m)
    assert rep.ok, rep.failures()
    assert ew.r == tv.id_one(n + m)


def test_monic_mediator():
    rng = random.Random(5)
    cfg = laws.LawConfig(max_object=2, max_components=2, max_dim=2)
    w = bp.make_witness(2, 1)
    b = laws.gen_one_mor(rng, cfg, 2, 3)
    b2 = laws.gen_resplit(rng, b)
    SA = laws.gen_iso_two(rng, cfg, tv.hcompose1(w.p_A, b), tv.hcompose1(w.p_A, b2))
    SB = laws.gen_iso_two(rng, cfg, tv.hcompose1(w.p_B, b), tv.hcompose1(w.p_B, b2))
    gamma = bp.monic_mediator(w, b, b2, SA, SB)
    assert tv.whisker_left(w.p_A, gamma) == SA
    assert tv.whisker_left(w.p_B, gamma) == SB
    assert tv.is_iso(gamma)
    ident = bp.monic_mediator(w, b, b, tv.id_two(tv.hcompose1(w.p_A, b)), tv.id_two(tv.hcompose1(w.p_B, b)))
    assert ident == tv.id_two(b)


def test_monic_mediator_flags_singular_sigma():
    w = bp.make_witness(1, 1)
    b = tv.OneMor(1, 2, [[(1,)], [(1,)]])
    pa, pb = tv.hcompose1(w.p_A, b), tv.hcompose1(w.p_B, b)
    with pytest.raises(ValueError):
        bp.monic_mediator(w, b, b, tv.zero_two(pa, pa), tv.id_two(pb))
