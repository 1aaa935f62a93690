"""The semiadditive category of matrices over the rationals.

Objects are naturals, a morphism ``n -> m`` is an ``m x n`` matrix, and the
biproduct of ``n`` and ``m`` is ``n + m`` with the usual block projections and
injections.  Everything above the base multiplication kernel is written with
projections, injections, pairing and copairing so that block decomposition
falls out of the biproduct structure instead of index loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import field
from .field import DenseMatrix, ShapeError

FIRST, SECOND = 1, 2


class ObjectMismatch(ShapeError):
    pass


@dataclass(frozen=True)
class MatMor:
    src: int
    tgt: int
    mat: DenseMatrix

    def __post_init__(self):
        if self.src < 0 or self.tgt < 0:
            raise ShapeError("objects are naturals")
        if self.mat.shape != (self.tgt, self.src):
            raise ShapeError(
                f"{self.mat.rows}x{self.mat.cols} matrix cannot be a morphism {self.src} -> {self.tgt}")

    @classmethod
    def of(cls, rows, src: int | None = None) -> "MatMor":
        m = DenseMatrix.from_rows(rows, cols=src)
        return cls(m.cols, m.rows, m)

    def __matmul__(self, other: "MatMor") -> "MatMor":
        return compose(self, other)


def ident(n: int) -> MatMor:
    return MatMor(n, n, field.identity(n))


def zero_mor(src: int, tgt: int) -> MatMor:
    """The zero morphism, i.e. the composite through the zero object ``0``."""
    return MatMor(src, tgt, field.zero(tgt, src))


def compose(g: MatMor, f: MatMor) -> MatMor:
    """``g . f`` (first ``f``, then ``g``)."""
    if f.tgt != g.src:
        raise ObjectMismatch(f"cannot compose {g.src}->{g.tgt} after {f.src}->{f.tgt}")
    return MatMor(f.src, g.tgt, field.mat_mul(g.mat, f.mat))


def proj(n: int, m: int, side: int) -> MatMor:
    """Projection out of ``n (+) m`` onto the first or second summand."""
    if side == FIRST:
        return MatMor(n + m, n, field.hstack([field.identity(n), field.zero(n, m)], rows=n))
    if side == SECOND:
        return MatMor(n + m, m, field.hstack([field.zero(m, n), field.identity(m)], rows=m))
    raise ValueError(f"side must be 1 or 2, got {side!r}")


def inj(n: int, m: int, side: int) -> MatMor:
    """Injection of the first or second summand into ``n (+) m``."""
    p = proj(n, m, side)
    return MatMor(p.tgt, p.src, p.mat.T)


def pair(f: MatMor, g: MatMor) -> MatMor:
    """Mediator into the product: ``f`` stacked over ``g``."""
    if f.src != g.src:
        raise ObjectMismatch("pair needs a common source")
    return MatMor(f.src, f.tgt + g.tgt, field.vstack([f.mat, g.mat], cols=f.src))


def copair(h: MatMor, k: MatMor) -> MatMor:
    """Mediator out of the coproduct: ``h`` beside ``k``."""
    if h.tgt != k.tgt:
        raise ObjectMismatch("copair needs a common target")
    return MatMor(h.src + k.src, h.tgt, field.hstack([h.mat, k.mat], rows=h.tgt))


def oplus(f: MatMor, g: MatMor) -> MatMor:
    """``f (+) g`` acting componentwise on the biproducts."""
    return MatMor(f.src + g.src, f.tgt + g.tgt, field.direct_sum(f.mat, g.mat))


def diagonal(n: int) -> MatMor:
    return pair(ident(n), ident(n))


def codiagonal(n: int) -> MatMor:
    return copair(ident(n), ident(n))


def add_via_biproduct(f: MatMor, g: MatMor) -> MatMor:
    """Monoid addition ``codiag . (f (+) g) . diag`` on a hom-set."""
    if (f.src, f.tgt) != (g.src, g.tgt):
        raise ObjectMismatch("can only add parallel morphisms")
    return compose(codiagonal(f.tgt), compose(oplus(f, g), diagonal(f.src)))


def canonical_r(n: int, m: int) -> MatMor:
    """The comparison map from the coproduct ``n + m`` to the product ``n x m``.

    It is assembled from its components ``p_k r i_j = delta_kj``: the copair of
    the pairs ``(id, 0)`` and ``(0, id)``.
    """
    return copair(pair(ident(n), zero_mor(n, m)), pair(zero_mor(m, n), ident(m)))


def _halves(n: int) -> tuple[int, ...]:
    if n < 2:
        return (n,)
    return ((n + 1) // 2, n // 2)


@lru_cache(maxsize=None)
def _parts(n: int):
    """Projections/injections for splitting ``n`` into its halves (or not at all)."""
    halves = _halves(n)
    if len(halves) == 1:
        return (ident(n),), (ident(n),)
    a, b = halves
    return (proj(a, b, FIRST), proj(a, b, SECOND)), (inj(a, b, FIRST), inj(a, b, SECOND))


def dnc_mul(a: MatMor, b: MatMor, threshold: int = 8) -> MatMor:
    """``a . b`` by recursive biproduct splitting of all three objects.

    Each object ``n`` splits as ``ceil(n/2) (+) floor(n/2)``; blocks are read off
    as ``p . a . i`` composites and the result is reassembled with pairing,
    copairing and biproduct addition.  Once every object is at most
    ``threshold`` the plain product is used.
    """
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    if b.tgt != a.src:
        raise ObjectMismatch(f"cannot compose {a.src}->{a.tgt} after {b.src}->{b.tgt}")
    if max(a.tgt, a.src, b.src) <= threshold:
        return compose(a, b)

    pz, iz = _parts(a.tgt)
    py, iy = _parts(a.src)
    px, ix = _parts(b.src)
    a_blocks = [[compose(p, compose(a, i)) for i in iy] for p in pz]
    b_blocks = [[compose(p, compose(b, i)) for i in ix] for p in py]

    cols = []
    for x in range(len(ix)):
        stacked = None
        for z in range(len(pz)):
            term = None
            for y in range(len(iy)):
                prod = dnc_mul(a_blocks[z][y], b_blocks[y][x], threshold)
                term = prod if term is None else add_via_biproduct(term, prod)
            stacked = term if stacked is None else pair(stacked, term)
        cols.append(stacked)
    out = cols[0]
    for c in cols[1:]:
        out = copair(out, c)
    return out
