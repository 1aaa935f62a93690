"""The 2-category 2Vect of matrices of vector spaces.

* an object is a natural number ``n``;
* a 1-morphism ``n -> m`` is an ``m x n`` grid whose entries are vector spaces
  given together with a direct-sum decomposition, stored as the tuple of
  component dimensions (an empty tuple is the zero space, and dimension-0
  components are allowed);
* a 2-morphism ``f => g`` is a grid of linear maps, entry ``(k, j)`` being a
  ``g[k][j].total x f[k][j].total`` matrix partitioned into blocks by the two
  decompositions.  Block ``(b, a)`` is the map from component ``a`` of the
  source to component ``b`` of the target.

Composition of 1-morphisms multiplies the grids: entry ``(l, j)`` of ``r . f``
is the direct sum over the contracted index ``k`` (ascending) of
``r[l][k] (x) f[k][j]``, and the tensor product of two decompositions lists the
pairwise products left-factor-major.  Inside a component ``r_a (x) f_b`` the
basis is ordered left-factor-major as well, so horizontal composition of
2-morphisms places ``kron(xi_block, theta_block)`` at each block position.

This concrete model is associative and distributive only up to the
permutation 2-isomorphisms built below (:func:`associator`,
:func:`distributor`, ...), and the biproduct equations hold up to the
normalizers that delete dimension-0 components.  All of these are explicit
2-morphisms so that every law can be checked by exact evaluation.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from itertools import chain
from typing import Callable, Hashable, Iterator, Sequence

from . import field
from .field import DenseMatrix, ShapeError
from .matcat import MatMor

Decomp = tuple  # tuple[int, ...]
Grid = tuple  # tuple[tuple[..., ...], ...]

FIRST, SECOND = 1, 2

MUTATIONS = ("kron-flip",)
_active_mutations: set[str] = set()


class CompositionError(ShapeError):
    """Raised when morphisms are not composable or not parallel."""


@contextmanager
def mutated(name: str) -> Iterator[None]:
    """Temporarily break horizontal composition (for testing the law suite).

    ``kron-flip`` builds the output index of every Kronecker factor block in
    the reversed factor order while keeping the input index correct.
    """
    if name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}; choose from {MUTATIONS}")
    _active_mutations.add(name)
    try:
        yield
    finally:
        _active_mutations.discard(name)


def total(d: Decomp) -> int:
    return sum(d)


def tensor(x: Decomp, y: Decomp) -> Decomp:
    return tuple(a * b for a in x for b in y)


@dataclass(frozen=True)
class OneMor:
    src: int
    tgt: int
    entries: Grid

    def __post_init__(self):
        entries = tuple(tuple(tuple(int(d) for d in e) for e in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.src < 0 or self.tgt < 0:
            raise ShapeError("objects are naturals")
        if len(entries) != self.tgt or any(len(row) != self.src for row in entries):
            raise ShapeError(f"a 1-morphism {self.src} -> {self.tgt} needs a {self.tgt}x{self.src} grid")
        if any(d < 0 for row in entries for e in row for d in e):
            raise ShapeError("component dimensions must be natural numbers")

    def __getitem__(self, kj) -> Decomp:
        k, j = kj
        return self.entries[k][j]

    def totals(self) -> list[list[int]]:
        return [[total(e) for e in row] for row in self.entries]

    def positions(self) -> Iterator[tuple[int, int]]:
        for k in range(self.tgt):
            for j in range(self.src):
                yield k, j

    def __repr__(self):
        return f"OneMor({self.src}->{self.tgt}, {[list(map(list, r)) for r in self.entries]})"


@dataclass(frozen=True)
class TwoMor:
    src: OneMor
    tgt: OneMor
    entries: Grid

    def __post_init__(self):
        f, g = self.src, self.tgt
        if (f.src, f.tgt) != (g.src, g.tgt):
            raise CompositionError("a 2-morphism needs parallel source and target")
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != f.tgt or any(len(row) != f.src for row in entries):
            raise ShapeError("2-morphism grid does not match its 1-morphisms")
        for k, j in f.positions():
            m = entries[k][j]
            want = (total(g[k, j]), total(f[k, j]))
            if not isinstance(m, DenseMatrix) or m.shape != want:
                got = getattr(m, "shape", type(m).__name__)
                raise ShapeError(f"entry ({k},{j}) has shape {got}, expected {want}")

    def __getitem__(self, kj) -> DenseMatrix:
        k, j = kj
        return self.entries[k][j]

    def block(self, k: int, j: int, b: int, a: int) -> DenseMatrix:
        """Component map from source component ``a`` to target component ``b`` of entry ``(k, j)``."""
        return field.block(self.entries[k][j], self.tgt[k, j], self.src[k, j], b, a)

    def is_zero(self) -> bool:
        return all(m.is_zero() for row in self.entries for m in row)

    def __repr__(self):
        return f"TwoMor({self.src!r} => {self.tgt!r}, {[list(r) for r in self.entries]})"


def _grid(rows: int, cols: int, fn: Callable[[int, int], object]) -> Grid:
    return tuple(tuple(fn(k, j) for j in range(cols)) for k in range(rows))


# ---------------------------------------------------------------- 1-morphisms

def id_one(n: int) -> OneMor:
    return OneMor(n, n, _grid(n, n, lambda k, j: (1,) if k == j else ()))


def zero_one(n: int, m: int) -> OneMor:
    """The zero 1-morphism ``n -> m`` (every entry the zero space, no components)."""
    return OneMor(n, m, _grid(m, n, lambda k, j: ()))


def hcompose1(r: OneMor, f: OneMor) -> OneMor:
    """``r . f``: first ``f``, then ``r``."""
    if f.tgt != r.src:
        raise CompositionError(f"cannot compose {r.src}->{r.tgt} after {f.src}->{f.tgt}")
    return OneMor(f.src, r.tgt, _grid(
        r.tgt, f.src,
        lambda l, j: tuple(chain.from_iterable(tensor(r[l, k], f[k, j]) for k in range(f.tgt)))))


def oplus_one(f: OneMor, g: OneMor) -> OneMor:
    """Biproduct in the hom-category: entrywise concatenation of decompositions."""
    _require_parallel(f, g)
    return OneMor(f.src, f.tgt, _grid(f.tgt, f.src, lambda k, j: f[k, j] + g[k, j]))


def decat(f: OneMor) -> MatMor:
    """Forget the decompositions: the matrix of total dimensions."""
    return MatMor(f.src, f.tgt, DenseMatrix.from_rows(f.totals(), cols=f.src))


def _require_parallel(f: OneMor, g: OneMor) -> None:
    if (f.src, f.tgt) != (g.src, g.tgt):
        raise CompositionError(f"1-morphisms {f.src}->{f.tgt} and {g.src}->{g.tgt} are not parallel")


# ---------------------------------------------------------------- 2-morphisms

def id_two(f: OneMor) -> TwoMor:
    return TwoMor(f, f, _grid(f.tgt, f.src, lambda k, j: field.identity(total(f[k, j]))))


def zero_two(f: OneMor, g: OneMor) -> TwoMor:
    _require_parallel(f, g)
    return TwoMor(f, g, _grid(f.tgt, f.src, lambda k, j: field.zero(total(g[k, j]), total(f[k, j]))))


def vcompose2(eta: TwoMor, theta: TwoMor) -> TwoMor:
    """``eta (.) theta``: entrywise matrix product."""
    if theta.tgt != eta.src:
        raise CompositionError("vertical composition needs theta's target to be eta's source")
    return TwoMor(theta.src, eta.tgt, _grid(
        theta.src.tgt, theta.src.src, lambda k, j: field.mat_mul(eta[k, j], theta[k, j])))


def add_two(a: TwoMor, b: TwoMor) -> TwoMor:
    if (a.src, a.tgt) != (b.src, b.tgt):
        raise CompositionError("can only add parallel 2-morphisms")
    return TwoMor(a.src, a.tgt, _grid(a.src.tgt, a.src.src, lambda k, j: field.mat_add(a[k, j], b[k, j])))


def scale_two(c, a: TwoMor) -> TwoMor:
    return TwoMor(a.src, a.tgt, _grid(a.src.tgt, a.src.src, lambda k, j: field.scale(c, a[k, j])))


def _kron_order(outer: Decomp, inner: Decomp, flip: bool = False) -> list[int]:
    """Positions in ``kron`` layout of the component-ordered tensor basis."""
    ot, it = total(outer), total(inner)
    oo, io = field.offsets(outer), field.offsets(inner)
    order = []
    for a, da in enumerate(outer):
        for b, db in enumerate(inner):
            for x in range(da):
                for y in range(db):
                    if flip:
                        order.append((io[b] + y) * ot + oo[a] + x)
                    else:
                        order.append((oo[a] + x) * it + io[b] + y)
    return order


def block_kron(xi: DenseMatrix, xi_rows: Decomp, xi_cols: Decomp,
               theta: DenseMatrix, theta_rows: Decomp, theta_cols: Decomp) -> DenseMatrix:
    """Tensor product of two partitioned maps in the component-ordered basis.

    Block ``((a, b), (a', b'))`` of the result is ``kron(xi[a, a'], theta[b, b'])``.
    """
    flip = "kron-flip" in _active_mutations
    rows = _kron_order(xi_rows, theta_rows, flip=flip)
    cols = _kron_order(xi_cols, theta_cols)
    return field.permute(field.kron(xi, theta), rows, cols)


def hcompose2(xi: TwoMor, theta: TwoMor) -> TwoMor:
    """Horizontal composite ``xi . theta``: ``r . f => s . g`` for ``xi: r => s``, ``theta: f => g``."""
    r, s, f, g = xi.src, xi.tgt, theta.src, theta.tgt
    if f.tgt != r.src:
        raise CompositionError(f"cannot compose {r.src}->{r.tgt} after {f.src}->{f.tgt}")

    def entry(l, j):
        return field.direct_sum(*(
            block_kron(xi[l, k], s[l, k], r[l, k], theta[k, j], g[k, j], f[k, j])
            for k in range(f.tgt)))

    return TwoMor(hcompose1(r, f), hcompose1(s, g), _grid(r.tgt, f.src, entry))


def whisker_left(f: OneMor, theta: TwoMor) -> TwoMor:
    """``f theta``: post-whiskering, ``f . g => f . h`` for ``theta: g => h``."""
    return hcompose2(id_two(f), theta)


def whisker_right(theta: TwoMor, f: OneMor) -> TwoMor:
    """``theta f``: pre-whiskering, ``g . f => h . f`` for ``theta: g => h``."""
    return hcompose2(theta, id_two(f))


def oplus_two(a: TwoMor, b: TwoMor) -> TwoMor:
    """``a (+) b : f (+) f' => g (+) g'`` (block diagonal in every entry)."""
    return TwoMor(oplus_one(a.src, b.src), oplus_one(a.tgt, b.tgt), _grid(
        a.src.tgt, a.src.src, lambda k, j: field.direct_sum(a[k, j], b[k, j])))


def local_proj(f: OneMor, g: OneMor, side: int) -> TwoMor:
    """Projection ``f (+) g => f`` (side 1) or ``=> g`` (side 2) in the hom-category."""
    fg = oplus_one(f, g)

    def entry(k, j):
        n, m = total(f[k, j]), total(g[k, j])
        if side == FIRST:
            return field.hstack([field.identity(n), field.zero(n, m)], rows=n)
        return field.hstack([field.zero(m, n), field.identity(m)], rows=m)

    if side not in (FIRST, SECOND):
        raise ValueError(f"side must be 1 or 2, got {side!r}")
    return TwoMor(fg, f if side == FIRST else g, _grid(f.tgt, f.src, entry))


def local_inj(f: OneMor, g: OneMor, side: int) -> TwoMor:
    """Injection ``f => f (+) g`` (side 1) or ``g => f (+) g`` (side 2)."""
    p = local_proj(f, g, side)
    return TwoMor(p.tgt, p.src, _grid(f.tgt, f.src, lambda k, j: p[k, j].T))


def copair_two(a: TwoMor, b: TwoMor) -> TwoMor:
    """``a pi_1 + b pi_2 : f (+) g => h`` for ``a: f => h`` and ``b: g => h``."""
    return add_two(vcompose2(a, local_proj(a.src, b.src, FIRST)),
                   vcompose2(b, local_proj(a.src, b.src, SECOND)))


def pair_two(a: TwoMor, b: TwoMor) -> TwoMor:
    """``nu_1 a + nu_2 b : h => f (+) g`` for ``a: h => f`` and ``b: h => g``."""
    return add_two(vcompose2(local_inj(a.tgt, b.tgt, FIRST), a),
                   vcompose2(local_inj(a.tgt, b.tgt, SECOND), b))


def inverse_two(theta: TwoMor) -> TwoMor:
    """Two-sided inverse of a 2-isomorphism; ``ValueError`` if some entry is singular."""
    return TwoMor(theta.tgt, theta.src, _grid(
        theta.src.tgt, theta.src.src, lambda k, j: field.inverse(theta[k, j])))


def is_iso(theta: TwoMor) -> bool:
    try:
        inverse_two(theta)
    except (ValueError, ShapeError):
        return False
    return True


def flatten(theta: TwoMor) -> list[list[DenseMatrix]]:
    """Per-entry matrices with the block partitions forgotten."""
    return [list(row) for row in theta.entries]


# ------------------------------------------------- structural 2-isomorphisms
#
# Each structural iso matches components of its source and target by a label
# describing where the component came from.  Within a matched pair of
# components the bases agree, so the iso is a block permutation matrix.

def _relabel(src: Decomp, src_keys: Sequence[Hashable],
             tgt: Decomp, tgt_keys: Sequence[Hashable]) -> DenseMatrix:
    src_off = field.offsets(src)
    where = {}
    for idx, key in enumerate(src_keys):
        where[key] = idx
    n_src, n_tgt = total(src), total(tgt)
    data = [0] * (n_tgt * n_src)
    used = set()
    row = 0
    for b, key in enumerate(tgt_keys):
        a = where.get(key)
        if a is None:
            if tgt[b]:
                raise CompositionError(f"no source component for {key!r}")
            continue
        if src[a] != tgt[b]:
            raise CompositionError(f"component {key!r} changes dimension")
        used.add(a)
        for x in range(tgt[b]):
            data[(row + x) * n_src + src_off[a] + x] = 1
        row += tgt[b]
    if any(src[a] for a in range(len(src)) if a not in used):
        raise CompositionError("a non-zero source component is not matched")
    return DenseMatrix._raw(n_tgt, n_src, tuple(data))


def _structural(f: OneMor, g: OneMor, keys_f, keys_g) -> TwoMor:
    """Block permutation ``f => g`` from component labels ``keys_*(k, j)``."""
    _require_parallel(f, g)
    return TwoMor(f, g, _grid(f.tgt, f.src, lambda k, j: _relabel(
        f[k, j], keys_f(k, j), g[k, j], keys_g(k, j))))


def _comp_keys(r: OneMor, f: OneMor, l: int, j: int):
    """Labels ``(k, a, b)`` of the components of ``(r . f)[l][j]`` in order."""
    return [(k, a, b) for k in range(f.tgt)
            for a in range(len(r[l, k])) for b in range(len(f[k, j]))]


def normalize(f: OneMor) -> tuple[OneMor, TwoMor, TwoMor]:
    """Delete dimension-0 components.

    Returns ``(f', fwd, bwd)`` with ``fwd: f => f'`` and ``bwd: f' => f`` mutually
    inverse.
    """
    kept = _grid(f.tgt, f.src, lambda k, j: tuple(i for i, d in enumerate(f[k, j]) if d))
    nf = OneMor(f.src, f.tgt, _grid(f.tgt, f.src, lambda k, j: tuple(f[k, j][i] for i in kept[k][j])))
    fwd = _structural(f, nf, lambda k, j: range(len(f[k, j])), lambda k, j: kept[k][j])
    bwd = _structural(nf, f, lambda k, j: kept[k][j], lambda k, j: range(len(f[k, j])))
    return nf, fwd, bwd


def normalized(f: OneMor) -> OneMor:
    return normalize(f)[0]


def associator(r: OneMor, f: OneMor, e: OneMor) -> TwoMor:
    """``(r . f) . e => r . (f . e)``."""
    left = hcompose1(hcompose1(r, f), e)
    right = hcompose1(r, hcompose1(f, e))

    def keys_left(l, j):
        return [(k, a, kk, b, c)
                for kk in range(e.tgt)
                for (k, a, b) in _comp_keys(r, f, l, kk)
                for c in range(len(e[kk, j]))]

    def keys_right(l, j):
        return [(k, a, kk, b, c)
                for k in range(f.tgt)
                for a in range(len(r[l, k]))
                for (kk, b, c) in _comp_keys(f, e, k, j)]

    return _structural(left, right, keys_left, keys_right)


def associator_inv(r: OneMor, f: OneMor, e: OneMor) -> TwoMor:
    """``r . (f . e) => (r . f) . e``."""
    a = associator(r, f, e)
    return TwoMor(a.tgt, a.src, _grid(a.src.tgt, a.src.src, lambda k, j: a[k, j].T))


def distribute_left(f: OneMor, g: OneMor, h: OneMor) -> TwoMor:
    """``f . (g (+) h) => f . g (+) f . h``."""
    src = hcompose1(f, oplus_one(g, h))
    tgt = oplus_one(hcompose1(f, g), hcompose1(f, h))

    def keys_src(l, j):
        return [(side, k, a, b)
                for k in range(g.tgt)
                for a in range(len(f[l, k]))
                for side, b in [(0, b) for b in range(len(g[k, j]))] + [(1, b) for b in range(len(h[k, j]))]]

    def keys_tgt(l, j):
        return ([(0, k, a, b) for (k, a, b) in _comp_keys(f, g, l, j)]
                + [(1, k, a, b) for (k, a, b) in _comp_keys(f, h, l, j)])

    return _structural(src, tgt, keys_src, keys_tgt)


def distribute_right(g: OneMor, h: OneMor, f: OneMor) -> TwoMor:
    """``(g (+) h) . f => g . f (+) h . f``."""
    src = hcompose1(oplus_one(g, h), f)
    tgt = oplus_one(hcompose1(g, f), hcompose1(h, f))

    def keys_src(l, j):
        return [(side, k, a, b)
                for k in range(f.tgt)
                for side, a in [(0, a) for a in range(len(g[l, k]))] + [(1, a) for a in range(len(h[l, k]))]
                for b in range(len(f[k, j]))]

    def keys_tgt(l, j):
        return ([(0, k, a, b) for (k, a, b) in _comp_keys(g, f, l, j)]
                + [(1, k, a, b) for (k, a, b) in _comp_keys(h, f, l, j)])

    return _structural(src, tgt, keys_src, keys_tgt)


def transpose_two(theta: TwoMor) -> TwoMor:
    """Reverse a block permutation (its inverse)."""
    return TwoMor(theta.tgt, theta.src, _grid(
        theta.src.tgt, theta.src.src, lambda k, j: theta[k, j].T))


def distributor(f: OneMor, g: OneMor, h: OneMor) -> tuple[TwoMor, TwoMor]:
    """The pair ``(alpha, alpha')`` witnessing ``f (g (+) h) ~ f g (+) f h``.

    ``alpha: f g (+) f h => f (g (+) h)`` is characterised by
    ``(f pi_h) alpha = pi_fh`` and ``(f pi_g) alpha = pi_fg``; ``alpha'`` is its
    inverse, characterised by ``alpha' (f nu_h) = nu_fh`` and
    ``alpha' (f nu_g) = nu_fg``.
    """
    spread = distribute_left(f, g, h)
    return transpose_two(spread), spread
