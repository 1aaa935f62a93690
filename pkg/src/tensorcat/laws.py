"""Seeded randomized checks of every algebraic law the library relies on.

Each law runs a number of cases.  Case ``i`` of law ``name`` draws from its
own generator seeded with ``f"{seed}:{name}:{i}"``, so any failure can be
replayed in isolation from the key stored in the report.  Laws that quantify
over small objects (``n, m <= 4`` and the like) enumerate them instead.

Every check is an exact equality of rationals.  A failing case carries its
inputs serialized as a morphism file, ready for ``tensorcat compose``.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from . import biproduct2 as bp
from . import field, matcat, morfile
from . import twovect as tv
from .field import DenseMatrix
from .matcat import FIRST, SECOND, MatMor
from .twovect import OneMor, TwoMor


@dataclass(frozen=True)
class LawConfig:
    seed: int = 42
    cases_per_law: int = 200
    max_object: int = 3
    max_components: int = 3
    max_dim: int = 3
    scalar_bound: int = 9

    def __post_init__(self):
        if self.cases_per_law < 0:
            raise ValueError("cases_per_law must be >= 0")
        for name in ("max_object", "max_components", "max_dim", "scalar_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass
class Failure:
    case: int
    key: str  # seed string of the case's generator
    detail: str
    counterexample: str


@dataclass
class LawResult:
    name: str
    statement: str
    cases: int
    failures: list[Failure] = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class LawReport:
    config: LawConfig
    mutate: str | None = None
    laws: list[LawResult] = dc_field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(len(law.failures) for law in self.laws)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def law(self, name: str) -> LawResult:
        for law in self.laws:
            if law.name == name:
                return law
        raise KeyError(name)

    def to_dict(self, timings: bool = True) -> dict:
        laws = []
        for law in self.laws:
            d = asdict(law)
            if not timings:
                del d["elapsed"]
            else:
                d["elapsed"] = round(d["elapsed"], 4)
            laws.append(d)
        return {"config": asdict(self.config), "mutate": self.mutate, "ok": self.ok,
                "failures": self.failures, "laws": laws}

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def lines(self) -> list[str]:
        out = []
        for law in self.laws:
            status = "PASS" if law.ok else "FAIL"
            tail = "" if law.ok else f", {len(law.failures)} failing"
            out.append(f"{status} {law.name} ({law.cases} cases{tail}, {law.elapsed:.2f}s): {law.statement}")
            for f in law.failures[:3]:
                out.append(f"    case {f.case} [{f.key}]: {f.detail}")
        verdict = "all laws hold" if self.ok else f"{self.failures} failing cases"
        out.append(f"{len(self.laws)} laws, {verdict}")
        return out


# ---------------------------------------------------------------- generators

def gen_scalar(rng: random.Random, cfg: LawConfig):
    b = cfg.scalar_bound
    return field.rational(Fraction(rng.randint(-b, b), rng.randint(1, b)))


def gen_matrix(rng: random.Random, cfg: LawConfig, rows: int, cols: int) -> DenseMatrix:
    return DenseMatrix(rows, cols, [gen_scalar(rng, cfg) for _ in range(rows * cols)])


def gen_invertible(rng: random.Random, cfg: LawConfig, n: int) -> DenseMatrix:
    while True:
        m = gen_matrix(rng, cfg, n, n)
        if field.is_invertible(m):
            return m


def gen_object(rng: random.Random, cfg: LawConfig) -> int:
    return rng.randint(1, cfg.max_object)


def gen_decomp(rng: random.Random, cfg: LawConfig) -> tuple:
    return tuple(rng.randint(0, cfg.max_dim) for _ in range(rng.randint(0, cfg.max_components)))


def gen_one_mor(rng: random.Random, cfg: LawConfig, src: int, tgt: int) -> OneMor:
    return OneMor(src, tgt, [[gen_decomp(rng, cfg) for _ in range(src)] for _ in range(tgt)])


def gen_two_mor(rng: random.Random, cfg: LawConfig, f: OneMor, g: OneMor) -> TwoMor:
    return TwoMor(f, g, [[gen_matrix(rng, cfg, tv.total(g[k, j]), tv.total(f[k, j]))
                          for j in range(f.src)] for k in range(f.tgt)])


def gen_iso_two(rng: random.Random, cfg: LawConfig, f: OneMor, g: OneMor) -> TwoMor:
    """A random 2-isomorphism ``f => g``; entry totals must agree."""
    return TwoMor(f, g, [[gen_invertible(rng, cfg, tv.total(f[k, j])) for j in range(f.src)]
                         for k in range(f.tgt)])


def gen_resplit(rng: random.Random, f: OneMor) -> OneMor:
    """Same entry totals as ``f``, with every entry decomposed afresh."""
    def split(n):
        cuts = sorted(rng.randint(0, n) for _ in range(rng.randint(0, 2)))
        return tuple(b - a for a, b in zip([0, *cuts], [*cuts, n]))
    return OneMor(f.src, f.tgt, [[split(tv.total(f[k, j])) for j in range(f.src)]
                                 for k in range(f.tgt)])


def gen_matmor(rng: random.Random, cfg: LawConfig, src: int, tgt: int) -> MatMor:
    return MatMor(src, tgt, gen_matrix(rng, cfg, tgt, src))


# ------------------------------------------------------------------- oracles

def _basis(outer: tuple, inner: tuple) -> list[tuple[int, int]]:
    """Basis of ``outer (x) inner`` in component order, as (outer, inner) coordinates."""
    out = []
    o0 = 0
    for a in outer:
        i0 = 0
        for b in inner:
            out.extend((o0 + x, i0 + y) for x in range(a) for y in range(b))
            i0 += b
        o0 += a
    return out


def hcompose2_oracle(xi: TwoMor, theta: TwoMor) -> list[list[DenseMatrix]]:
    """Entries of ``xi o theta`` computed scalar by scalar from raw entries."""
    r, r2, f, f2 = xi.src, xi.tgt, theta.src, theta.tgt
    grid = []
    for m in range(r.tgt):
        row = []
        for j in range(f.src):
            rows = [(k, x, y) for k in range(r.src) for x, y in _basis(r2[m, k], f2[k, j])]
            cols = [(k, x, y) for k in range(r.src) for x, y in _basis(r[m, k], f[k, j])]
            data = [xi[m, k][x, x2] * theta[k, j][y, y2] if k == k2 else 0
                    for k, x, y in rows for k2, x2, y2 in cols]
            row.append(DenseMatrix(len(rows), len(cols), data))
        grid.append(row)
    return grid


# --------------------------------------------------------------------- laws

@dataclass(frozen=True)
class Law:
    name: str
    statement: str
    check: Callable  # (rng, cfg, param) -> None, or (detail, named inputs) on failure
    params: Callable[[LawConfig], list] | None = None  # enumerated laws only


_LAWS: list[Law] = []


def law(name: str, statement: str, params=None):
    def register(fn):
        _LAWS.append(Law(name, statement, fn, params))
        return fn
    return register


def laws() -> list[Law]:
    return list(_LAWS)


def _differ(pairs: Iterable[tuple[str, object, object]]) -> str | None:
    bad = [label for label, lhs, rhs in pairs if lhs != rhs]
    return "; ".join(f"{b} fails" for b in bad) or None


def _result(detail: str | None, **named):
    return None if detail is None else (detail, named)


def _small_pairs(limit: int, low: int = 1) -> Callable[[LawConfig], list]:
    return lambda cfg: list(product(range(low, limit + 1), repeat=2))


@law("matk-biproduct-axioms",
     "p1 i1 = id, p2 i2 = id, p1 i2 = 0, p2 i1 = 0, i1 p1 + i2 p2 = id on n (+) m, for n, m <= 6",
     params=_small_pairs(6, low=0))
def _matk_axioms(rng, cfg, nm):
    n, m = nm
    p1, p2 = matcat.proj(n, m, FIRST), matcat.proj(n, m, SECOND)
    i1, i2 = matcat.inj(n, m, FIRST), matcat.inj(n, m, SECOND)
    C = matcat.compose
    detail = _differ([
        ("p1 i1 = id", C(p1, i1), matcat.ident(n)),
        ("p2 i2 = id", C(p2, i2), matcat.ident(m)),
        ("p1 i2 = 0", C(p1, i2), matcat.zero_mor(m, n)),
        ("p2 i1 = 0", C(p2, i1), matcat.zero_mor(n, m)),
        ("i1 p1 + i2 p2 = id",
         MatMor(n + m, n + m, C(i1, p1).mat + C(i2, p2).mat), matcat.ident(n + m)),
        ("pair(p1, p2) = id", matcat.pair(p1, p2), matcat.ident(n + m)),
        ("copair(i1, i2) = id", matcat.copair(i1, i2), matcat.ident(n + m)),
    ])
    return _result(detail, p1=p1, p2=p2, i1=i1, i2=i2)


@law("matk-addition",
     "codiag . (f (+) g) . diag = f + g entrywise; the sum is commutative and associative with unit 0")
def _matk_addition(rng, cfg, _):
    n, m = rng.randint(0, 6), rng.randint(0, 6)
    f, g, h = (gen_matmor(rng, cfg, n, m) for _ in range(3))
    add = matcat.add_via_biproduct
    detail = _differ([
        ("addition via biproduct", add(f, g), MatMor(n, m, f.mat + g.mat)),
        ("commutativity", add(f, g), add(g, f)),
        ("associativity", add(add(f, g), h), add(f, add(g, h))),
        ("zero unit", add(f, matcat.zero_mor(n, m)), f),
    ])
    return _result(detail, f=f, g=g, h=h)


@law("matk-canonical-r",
     "the comparison map r has components p_k r i_j = delta_kj and equals the identity, n, m <= 6",
     params=_small_pairs(6, low=0))
def _matk_canonical(rng, cfg, nm):
    n, m = nm
    r = matcat.canonical_r(n, m)
    objs = {FIRST: n, SECOND: m}
    checks = [("r = id", r, matcat.ident(n + m))]
    for k, j in product((FIRST, SECOND), repeat=2):
        comp = matcat.compose(matcat.proj(n, m, k), matcat.compose(r, matcat.inj(n, m, j)))
        want = matcat.ident(objs[k]) if k == j else matcat.zero_mor(objs[j], objs[k])
        checks.append((f"p{k} r i{j}", comp, want))
    return _result(_differ(checks), r=r)


@law("dnc-mul", "divide-and-conquer multiplication through biproduct blocks equals a . b")
def _dnc(rng, cfg, _):
    x, y, z = (rng.randint(1, 16) for _ in range(3))
    a, b = gen_matmor(rng, cfg, y, z), gen_matmor(rng, cfg, x, y)
    threshold = rng.randint(1, 4)
    detail = _differ([(f"threshold {threshold}", matcat.dnc_mul(a, b, threshold), matcat.compose(a, b))])
    return _result(detail, a=a, b=b)


@law("decat-multiplicative", "decat(r o f) = decat(r) . decat(f)")
def _decat(rng, cfg, _):
    A, B, C = (gen_object(rng, cfg) for _ in range(3))
    f, r = gen_one_mor(rng, cfg, A, B), gen_one_mor(rng, cfg, B, C)
    detail = _differ([("decat", tv.decat(tv.hcompose1(r, f)),
                       matcat.compose(tv.decat(r), tv.decat(f)))])
    return _result(detail, f=f, r=r)


@law("interchange", "(b' .v a') .h (b .v a) = (b' .h b) .v (a' .h a)")
def _interchange(rng, cfg, _):
    A, B, C = (gen_object(rng, cfg) for _ in range(3))
    f, g, h = (gen_one_mor(rng, cfg, A, B) for _ in range(3))
    k, l, m = (gen_one_mor(rng, cfg, B, C) for _ in range(3))
    a, b = gen_two_mor(rng, cfg, f, g), gen_two_mor(rng, cfg, g, h)
    a2, b2 = gen_two_mor(rng, cfg, k, l), gen_two_mor(rng, cfg, l, m)
    lhs = tv.hcompose2(tv.vcompose2(b2, a2), tv.vcompose2(b, a))
    rhs = tv.vcompose2(tv.hcompose2(b2, b), tv.hcompose2(a2, a))
    return _result(_differ([("interchange", lhs, rhs)]), a=a, b=b, a2=a2, b2=b2)


@law("flatten-oracle",
     "per-entry matrices of a .v b, a + b and x .h t agree with products, sums and a scalar-indexed recomputation")
def _flatten(rng, cfg, _):
    A, B, C = (gen_object(rng, cfg) for _ in range(3))
    f, g, h = (gen_one_mor(rng, cfg, A, B) for _ in range(3))
    r, r2 = gen_one_mor(rng, cfg, B, C), gen_one_mor(rng, cfg, B, C)
    a, a_ = gen_two_mor(rng, cfg, f, g), gen_two_mor(rng, cfg, f, g)
    b = gen_two_mor(rng, cfg, g, h)
    x = gen_two_mor(rng, cfg, r, r2)
    F = tv.flatten
    detail = _differ([
        ("vertical", F(tv.vcompose2(b, a)),
         [[field.mat_mul(p, q) for p, q in zip(rb, ra)] for rb, ra in zip(F(b), F(a))]),
        ("addition", F(tv.add_two(a, a_)),
         [[p + q for p, q in zip(ra, rc)] for ra, rc in zip(F(a), F(a_))]),
        ("horizontal", F(tv.hcompose2(x, a)), hcompose2_oracle(x, a)),
    ])
    return _result(detail, a=a, a_=a_, b=b, x=x)


@law("distributivity-horizontal",
     "c .h (a + b) = c .h a + c .h b and (a + b) .h c = a .h c + b .h c, whiskered and unwhiskered")
def _dist_h(rng, cfg, _):
    A, B, C = (gen_object(rng, cfg) for _ in range(3))
    f, g = gen_one_mor(rng, cfg, A, B), gen_one_mor(rng, cfg, A, B)
    k, l = gen_one_mor(rng, cfg, B, C), gen_one_mor(rng, cfg, B, C)
    a, b = gen_two_mor(rng, cfg, f, g), gen_two_mor(rng, cfg, f, g)
    c = gen_two_mor(rng, cfg, k, l)
    a2, b2 = gen_two_mor(rng, cfg, k, l), gen_two_mor(rng, cfg, k, l)
    e = gen_two_mor(rng, cfg, f, g)
    H, S = tv.hcompose2, tv.add_two
    detail = _differ([
        ("c(a + b)", H(c, S(a, b)), S(H(c, a), H(c, b))),
        ("(a' + b')e", H(S(a2, b2), e), S(H(a2, e), H(b2, e))),
        ("k(a + b)", tv.whisker_left(k, S(a, b)), S(tv.whisker_left(k, a), tv.whisker_left(k, b))),
        ("(a' + b')f", tv.whisker_right(S(a2, b2), f), S(tv.whisker_right(a2, f), tv.whisker_right(b2, f))),
    ])
    return _result(detail, a=a, b=b, c=c, a2=a2, b2=b2, e=e)


@law("distributivity-vertical",
     "a .v (b + c) = a .v b + a .v c and (b + c) .v d = b .v d + c .v d")
def _dist_v(rng, cfg, _):
    A, B = gen_object(rng, cfg), gen_object(rng, cfg)
    f, g, h = (gen_one_mor(rng, cfg, A, B) for _ in range(3))
    b, c = gen_two_mor(rng, cfg, f, g), gen_two_mor(rng, cfg, f, g)
    a = gen_two_mor(rng, cfg, g, h)
    b2, c2 = gen_two_mor(rng, cfg, g, h), gen_two_mor(rng, cfg, g, h)
    d = gen_two_mor(rng, cfg, f, g)
    V, S = tv.vcompose2, tv.add_two
    detail = _differ([
        ("a(b + c)", V(a, S(b, c)), S(V(a, b), V(a, c))),
        ("(b' + c')d", V(S(b2, c2), d), S(V(b2, d), V(c2, d))),
    ])
    return _result(detail, a=a, b=b, c=c, b2=b2, c2=c2, d=d)


@law("local-biproduct",
     "pi_1 nu_1 = 1_f, pi_2 nu_2 = 1_g, pi_1 nu_2 = 0, pi_2 nu_1 = 0, nu_1 pi_1 + nu_2 pi_2 = 1_(f+g)")
def _local(rng, cfg, _):
    A, B = gen_object(rng, cfg), gen_object(rng, cfg)
    f, g = gen_one_mor(rng, cfg, A, B), gen_one_mor(rng, cfg, A, B)
    p1, p2 = tv.local_proj(f, g, FIRST), tv.local_proj(f, g, SECOND)
    n1, n2 = tv.local_inj(f, g, FIRST), tv.local_inj(f, g, SECOND)
    V = tv.vcompose2
    detail = _differ([
        ("pi1 nu1", V(p1, n1), tv.id_two(f)),
        ("pi2 nu2", V(p2, n2), tv.id_two(g)),
        ("pi1 nu2", V(p1, n2), tv.zero_two(g, f)),
        ("pi2 nu1", V(p2, n1), tv.zero_two(f, g)),
        ("nu1 pi1 + nu2 pi2", tv.add_two(V(n1, p1), V(n2, p2)), tv.id_two(tv.oplus_one(f, g))),
    ])
    return _result(detail, f=f, g=g)


@law("distributor",
     "for a: fg (+) fh => f(g (+) h) and its inverse a': (f pi_h) a = pi_fh, (f pi_g) a = pi_fg, "
     "a' (f nu_h) = nu_fh, a' (f nu_g) = nu_fg, a' a = 1, a a' = 1")
def _distributor(rng, cfg, _):
    A, B, C = (gen_object(rng, cfg) for _ in range(3))
    g, h = gen_one_mor(rng, cfg, A, B), gen_one_mor(rng, cfg, A, B)
    f = gen_one_mor(rng, cfg, B, C)
    alpha, alpha_inv = tv.distributor(f, g, h)
    fg, fh = tv.hcompose1(f, g), tv.hcompose1(f, h)
    V, W = tv.vcompose2, tv.whisker_left
    detail = _differ([
        ("(f pi_h) a = pi_fh", V(W(f, tv.local_proj(g, h, SECOND)), alpha), tv.local_proj(fg, fh, SECOND)),
        ("(f pi_g) a = pi_fg", V(W(f, tv.local_proj(g, h, FIRST)), alpha), tv.local_proj(fg, fh, FIRST)),
        ("a' (f nu_h) = nu_fh", V(alpha_inv, W(f, tv.local_inj(g, h, SECOND))), tv.local_inj(fg, fh, SECOND)),
        ("a' (f nu_g) = nu_fg", V(alpha_inv, W(f, tv.local_inj(g, h, FIRST))), tv.local_inj(fg, fh, FIRST)),
        ("a' a = 1", V(alpha_inv, alpha), tv.id_two(alpha.src)),
        ("a a' = 1", V(alpha, alpha_inv), tv.id_two(alpha.tgt)),
    ])
    return _result(detail, f=f, g=g, h=h)


@law("associator-naturality",
     "assoc(r', l, g) . ((x .h a') .h a) = (x .h (a' .h a)) . assoc(r, k, f); assoc is invertible")
def _assoc(rng, cfg, _):
    A, B, C, D = (gen_object(rng, cfg) for _ in range(4))
    f, g = gen_one_mor(rng, cfg, A, B), gen_one_mor(rng, cfg, A, B)
    k, l = gen_one_mor(rng, cfg, B, C), gen_one_mor(rng, cfg, B, C)
    r, r2 = gen_one_mor(rng, cfg, C, D), gen_one_mor(rng, cfg, C, D)
    a, a2, x = gen_two_mor(rng, cfg, f, g), gen_two_mor(rng, cfg, k, l), gen_two_mor(rng, cfg, r, r2)
    H, V = tv.hcompose2, tv.vcompose2
    fwd = tv.associator(r, k, f)
    detail = _differ([
        ("naturality", V(tv.associator(r2, l, g), H(H(x, a2), a)), V(H(x, H(a2, a)), fwd)),
        ("inverse", V(tv.associator_inv(r, k, f), fwd), tv.id_two(fwd.src)),
    ])
    return _result(detail, a=a, a2=a2, x=x)


@law("zero-constancy",
     "whiskering by a zero 1-morphism and composing with a zero 2-morphism give zero 2-morphisms")
def _zero(rng, cfg, _):
    A, B, C = (gen_object(rng, cfg) for _ in range(3))
    f, g = gen_one_mor(rng, cfg, A, B), gen_one_mor(rng, cfg, A, B)
    h = gen_one_mor(rng, cfg, A, B)
    k, l = gen_one_mor(rng, cfg, B, C), gen_one_mor(rng, cfg, B, C)
    a, c = gen_two_mor(rng, cfg, f, g), gen_two_mor(rng, cfg, k, l)
    z_bc, z_ca = tv.zero_one(B, C), tv.zero_one(C, A)
    left = tv.whisker_left(z_bc, a)
    right = tv.whisker_right(c, tv.zero_one(A, B))
    vz = tv.vcompose2(tv.zero_two(g, h), a)
    hz = tv.hcompose2(tv.zero_two(k, l), a)
    checks = [
        ("0 a is zero", left.is_zero(), True),
        ("0 a lands in zero", tv.normalized(left.src), tv.zero_one(A, C)),
        ("c 0 is zero", right.is_zero(), True),
        ("c 0 lands in zero", tv.normalized(right.src), tv.zero_one(A, C)),
        ("0 . a = 0", vz, tv.zero_two(f, h)),
        ("0 o a = 0", hz, tv.zero_two(hz.src, hz.tgt)),
        ("1_0 = 0", tv.id_two(z_ca), tv.zero_two(z_ca, z_ca)),
    ]
    return _result(_differ(checks), a=a, c=c)


@law("normalizer", "normalize gives mutually inverse isos f => f' => f and id o f normalizes to f")
def _normalizer(rng, cfg, _):
    A, B = gen_object(rng, cfg), gen_object(rng, cfg)
    f = gen_one_mor(rng, cfg, A, B)
    nf, fwd, bwd = tv.normalize(f)
    detail = _differ([
        ("bwd fwd = 1", tv.vcompose2(bwd, fwd), tv.id_two(f)),
        ("fwd bwd = 1", tv.vcompose2(fwd, bwd), tv.id_two(nf)),
        ("no zero components", any(0 in nf[k, j] for k, j in nf.positions()), False),
        ("id o f", tv.normalized(tv.hcompose1(tv.id_one(B), f)), nf),
        ("f o id", tv.normalized(tv.hcompose1(f, tv.id_one(A))), nf),
    ])
    return _result(detail, f=f)


@law("biproduct-conditions",
     "theta typing and invertibility, theta_AB = theta_BA = 0, 1_(p_A i_B) = 0, "
     "(p_A i_A) theta_A = theta_A (p_A i_A), p_X theta_P i_X in diagonal form, n, m <= 4",
     params=_small_pairs(4))
def _conditions(rng, cfg, nm):
    w = bp.make_witness(*nm)
    rep = bp.check_biproduct_conditions(w)
    return _report_result(rep, theta_P=w.theta_P, theta_A=w.theta_A, theta_B=w.theta_B)


@law("sigma-rows", "p_A theta_P = (theta_A p_A, 0) and p_B theta_P = (0, theta_B p_B), n, m <= 4",
     params=_small_pairs(4))
def _sigma(rng, cfg, nm):
    w = bp.make_witness(*nm)
    return _report_result(bp.sigma_report(w), theta_P=w.theta_P)


@law("canonical-equivalence",
     "(r' x_prod)(x_coprod r') = 1_r' and (x_prod r)(r x_coprod) = 1_r, n, m <= 3",
     params=_small_pairs(3))
def _equiv(rng, cfg, nm):
    ew, rep = bp.canonical_equiv(*nm)
    return _report_result(rep, xi_prod=ew.xi_prod, xi_coprod=ew.xi_coprod)


def _cone_pair(rng, cfg):
    small = LawConfig(cfg.seed, cfg.cases_per_law, min(cfg.max_object, 2),
                      min(cfg.max_components, 2), min(cfg.max_dim, 2), cfg.scalar_bound)
    n, m = gen_object(rng, small), gen_object(rng, small)
    X = gen_object(rng, small)
    w = bp.make_witness(n, m)
    f, g = gen_one_mor(rng, small, X, n), gen_one_mor(rng, small, X, m)
    f2, g2 = gen_one_mor(rng, small, X, n), gen_one_mor(rng, small, X, m)
    Sigma_A, Sigma_B = gen_two_mor(rng, small, f, f2), gen_two_mor(rng, small, g, g2)
    return small, w, bp.Cone(X, f, g), bp.Cone(X, f2, g2), Sigma_A, Sigma_B


@law("universal-property",
     "mediator legs are 2-isos, p_A gamma = xi'_A^-1 Sigma_A xi_A (same for B), "
     "reconstruction fixes gamma and any gamma', theta_P h = diag(i_A theta_A f, i_B theta_B g)")
def _universal(rng, cfg, _):
    small, w, c, c2, Sigma_A, Sigma_B = _cone_pair(rng, cfg)
    try:
        b, xi_A, xi_B = bp.product_mediator(w, c)
    except ArithmeticError as exc:
        return (str(exc), {"f": c.f, "g": c.g})
    gamma = bp.mediator_gamma(w, c, c2, Sigma_A, Sigma_B)
    rep = bp.universal_condition(w, c, c2, Sigma_A, Sigma_B, gamma)
    rep.check("reconstruct(gamma) = gamma", bp.reconstruct_gamma(w, gamma), gamma)
    other = gen_two_mor(rng, small, gamma.src, gamma.tgt)
    rep.check("reconstruct(gamma') = gamma'", bp.reconstruct_gamma(w, other), other)
    rep.results.update(bp.theta_P_on_mediator(w, c).results)
    return _report_result(rep, Sigma_A=Sigma_A, Sigma_B=Sigma_B, gamma_other=other)


@law("monic-projections",
     "for 2-isos Sigma_X: p_X b => p_X b' the mediator gamma: b => b' is a 2-iso with p_A gamma = Sigma_A, "
     "p_B gamma = Sigma_B")
def _monic(rng, cfg, _):
    small = LawConfig(cfg.seed, cfg.cases_per_law, min(cfg.max_object, 2),
                      min(cfg.max_components, 2), min(cfg.max_dim, 2), cfg.scalar_bound)
    n, m, X = (gen_object(rng, small) for _ in range(3))
    w = bp.make_witness(n, m)
    b = gen_one_mor(rng, small, X, n + m)
    b2 = gen_resplit(rng, b)
    pa, pa2 = tv.hcompose1(w.p_A, b), tv.hcompose1(w.p_A, b2)
    pb, pb2 = tv.hcompose1(w.p_B, b), tv.hcompose1(w.p_B, b2)
    Sigma_A, Sigma_B = gen_iso_two(rng, small, pa, pa2), gen_iso_two(rng, small, pb, pb2)
    gamma = bp.monic_mediator(w, b, b2, Sigma_A, Sigma_B)
    detail = _differ([
        ("p_A gamma = Sigma_A", tv.whisker_left(w.p_A, gamma), Sigma_A),
        ("p_B gamma = Sigma_B", tv.whisker_left(w.p_B, gamma), Sigma_B),
        ("gamma invertible", tv.is_iso(gamma), True),
    ])
    return _result(detail, Sigma_A=Sigma_A, Sigma_B=Sigma_B)


def _report_result(rep: bp.Report, **named):
    if rep.ok:
        return None
    parts = [f"{k}: {v[:4]}" for k, v in rep.failures().items()]
    return ("; ".join(parts), named)


# ------------------------------------------------------------------- running

def _case_key(cfg: LawConfig, name: str, i: int) -> str:
    return f"{cfg.seed}:{name}:{i}"


def run_law(item: Law, cfg: LawConfig) -> LawResult:
    """Run every case of one law under the currently active mutations."""
    if cfg.cases_per_law == 0:
        params = []
    elif item.params is not None:
        params = item.params(cfg)
    else:
        params = [None] * cfg.cases_per_law
    res = LawResult(item.name, item.statement, len(params))
    start = time.perf_counter()
    for i, param in enumerate(params):
        key = _case_key(cfg, item.name, i)
        outcome = item.check(random.Random(key), cfg, param)
        if outcome is not None:
            detail, named = outcome
            header = (f"# law {item.name}, case {i}, generator key {key}\n"
                      f"# checks {item.statement}\n# {detail}\n")
            res.failures.append(Failure(i, key, detail, header + morfile.dumps(**named)))
    res.elapsed = time.perf_counter() - start
    return res


def _run_in_worker(args) -> LawResult:
    name, cfg, mutate = args
    item = next(x for x in _LAWS if x.name == name)
    if mutate:
        with tv.mutated(mutate):
            return run_law(item, cfg)
    return run_law(item, cfg)


def run_suite(cfg: LawConfig = LawConfig(), mutate: str | None = None,
              only: Iterable[str] | None = None, jobs: int = 1) -> LawReport:
    """Run the registered laws (all, or those named in ``only``).

    With ``cases_per_law == 0`` nothing runs and the report is empty.
    ``mutate`` switches on a deliberately wrong composition variant for the
    duration of the run.  ``jobs > 1`` spreads laws across processes; the
    report is identical apart from timings.
    """
    if mutate is not None and mutate not in tv.MUTATIONS:
        raise ValueError(f"unknown mutation {mutate!r}; choose from {', '.join(tv.MUTATIONS)}")
    report = LawReport(cfg, mutate)
    if cfg.cases_per_law == 0:
        return report
    selected = _LAWS
    if only is not None:
        wanted = list(only)
        unknown = set(wanted) - {x.name for x in _LAWS}
        if unknown:
            raise ValueError(f"unknown laws: {', '.join(sorted(unknown))}")
        selected = [x for x in _LAWS if x.name in wanted]
    tasks = [(x.name, cfg, mutate) for x in selected]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.laws = list(pool.map(_run_in_worker, tasks))
    else:
        report.laws = [_run_in_worker(t) for t in tasks]
    return report
