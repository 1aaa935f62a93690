import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tensorcat import field, matcat
from tensorcat.matcat import FIRST, SECOND, MatMor, ObjectMismatch

from strategies import matmors


def test_projection_and_injection_matrices():
    assert matcat.proj(1, 1, FIRST).mat.tolist() == [[1, 0]]
    assert matcat.proj(1, 2, SECOND).mat.tolist() == [[0, 1, 0], [0, 0, 1]]
    assert matcat.inj(2, 1, FIRST).mat.tolist() == [[1, 0], [0, 1], [0, 0]]
    with pytest.raises(ValueError):
        matcat.proj(1, 1, 3)


@pytest.mark.parametrize("n,m", list(itertools.product(range(4), repeat=2)))
def test_biproduct_equations(n, m):
    p1, p2 = matcat.proj(n, m, FIRST), matcat.proj(n, m, SECOND)
    i1, i2 = matcat.inj(n, m, FIRST), matcat.inj(n, m, SECOND)
    assert p1 @ i1 == matcat.ident(n)
    assert p2 @ i2 == matcat.ident(m)
    assert p1 @ i2 == matcat.zero_mor(m, n)
    assert matcat.add_via_biproduct(i1 @ p1, i2 @ p2) == matcat.ident(n + m)


def test_pair_copair_universal_maps():
    f = MatMor.of([[1, 2]])
    g = MatMor.of([[3, 4], [5, 6]])
    pg = matcat.pair(f, g)
    assert matcat.proj(1, 2, FIRST) @ pg == f
    assert matcat.proj(1, 2, SECOND) @ pg == g
    cp = matcat.copair(MatMor.of([[1], [2]]), MatMor.of([[3, 4], [5, 6]]))
    assert cp @ matcat.inj(1, 2, SECOND) == MatMor.of([[3, 4], [5, 6]])
    with pytest.raises(ObjectMismatch):
        matcat.pair(f, MatMor.of([[1, 2, 3]]))


def test_canonical_r_is_identity():
    assert matcat.canonical_r(2, 3) == matcat.ident(5)
    assert matcat.canonical_r(0, 0) == matcat.ident(0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_addition_via_biproduct_is_entrywise(n, m, data):
    f, g = data.draw(matmors(n, m)), data.draw(matmors(n, m))
    assert matcat.add_via_biproduct(f, g).mat == f.mat + g.mat


def test_compose_checks_objects():
    with pytest.raises(ObjectMismatch):
        matcat.compose(matcat.ident(2), matcat.ident(3))
    with pytest.raises(field.ShapeError):
        MatMor(2, 3, field.zero(2, 3))


def test_dnc_trivial_and_degenerate_threshold():
    a = MatMor.of([[5]])
    assert matcat.dnc_mul(a, a) == MatMor.of([[25]])
    big = MatMor(9, 9, field.identity(9))
    assert matcat.dnc_mul(big, big, threshold=64) == big
    with pytest.raises(ValueError):
        matcat.dnc_mul(a, a, threshold=0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(1, 3), st.data())
def test_dnc_matches_plain_product(x, y, z, threshold, data):
    a, b = data.draw(matmors(y, z)), data.draw(matmors(x, y))
    assert matcat.dnc_mul(a, b, threshold) == matcat.compose(a, b)
