"""Hypothesis strategies for small exact morphisms."""
from __future__ import annotations


from hypothesis import strategies as st

from tensorcat.field import DenseMatrix, rational
from tensorcat.matcat import MatMor
from tensorcat.twovect import OneMor, TwoMor, total

scalars = st.fractions(min_value=-9, max_value=9, max_denominator=9).map(rational)
objects = st.integers(1, 3)
decomps = st.lists(st.integers(0, 2), max_size=2).map(tuple)


def matrices(rows: int, cols: int):
    return st.lists(scalars, min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: DenseMatrix(rows, cols, xs))


@st.composite
def any_matrix(draw, max_side: int = 5):
    r, c = draw(st.integers(0, max_side)), draw(st.integers(0, max_side))
    return draw(matrices(r, c))


@st.composite
def matmors(draw, src: int, tgt: int):
    return MatMor(src, tgt, draw(matrices(tgt, src)))


@st.composite
def one_mors(draw, src: int, tgt: int):
    return OneMor(src, tgt, [[draw(decomps) for _ in range(src)] for _ in range(tgt)])


@st.composite
def two_mors(draw, f: OneMor, g: OneMor):
    return TwoMor(f, g, [[draw(matrices(total(g[k, j]), total(f[k, j]))) for j in range(f.src)]
                         for k in range(f.tgt)])


@st.composite
def two_mor_between(draw, src: int, tgt: int):
    f, g = draw(one_mors(src, tgt)), draw(one_mors(src, tgt))
    return draw(two_mors(f, g))
