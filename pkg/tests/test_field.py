from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tensorcat import field
from tensorcat.field import DenseMatrix, ShapeError, rational

from strategies import any_matrix, matrices, scalars


def naive_mul(a, b):
    return [[sum((Fraction(a[i, t]) * Fraction(b[t, j]) for t in range(a.cols)), Fraction(0))
             for j in range(b.cols)] for i in range(a.rows)]


def test_rational_forms():
    assert rational("3/6") == Fraction(1, 2)
    assert rational("-4/2") == -2 and type(rational("-4/2")) is int
    assert rational(Fraction(6, 3)) == 2 and type(rational(Fraction(6, 3))) is int
    assert field.format_rational(Fraction(-2, 4)) == "-1/2"
    for bad in ("1.5", "1e3", "", "x"):
        with pytest.raises(ValueError):
            rational(bad)
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)


def test_shapes_and_empty_matrices():
    with pytest.raises(ShapeError):
        DenseMatrix(2, 2, [1, 2, 3])
    e = field.zero(0, 3)
    assert field.mat_mul(field.zero(2, 0), e) == field.zero(2, 3)
    assert field.direct_sum() == field.zero(0, 0)
    assert field.kron(field.zero(0, 2), field.identity(3)).shape == (0, 6)
    with pytest.raises(ShapeError):
        field.mat_mul(field.zero(2, 3), field.zero(2, 3))


def test_kron_known_values():
    a = DenseMatrix.from_rows([[1, 2], [3, 4]])
    b = DenseMatrix.from_rows([[0, 1]])
    assert field.kron(a, b).tolist() == [[0, 1, 0, 2], [0, 3, 0, 4]]


def test_direct_sum_and_blocks():
    a = DenseMatrix.from_rows([[1, 2]])
    b = DenseMatrix.from_rows([[3], [4]])
    s = field.direct_sum(a, b)
    assert s.tolist() == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]
    assert field.block(s, [1, 2], [2, 1], 1, 1) == b
    assert field.block(s, [1, 2], [2, 1], 0, 1) == field.zero(1, 1)


def test_inverse_and_singular():
    a = DenseMatrix.from_rows([[2, 1], [1, 1]])
    assert field.inverse(a).tolist() == [[1, -1], [-1, 2]]
    with pytest.raises(ValueError):
        field.inverse(DenseMatrix.from_rows([[1, 2], [2, 4]]))
    assert field.inverse(field.zero(0, 0)) == field.zero(0, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.data())
def test_mat_mul_matches_naive_triple_loop(r, k, c, data):
    a, b = data.draw(matrices(r, k)), data.draw(matrices(k, c))
    assert field.mat_mul(a, b).tolist() == naive_mul(a, b)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_zero_one_fast_path_matches_naive(r, c, data):
    pattern = data.draw(st.lists(st.sampled_from([0, 1]), min_size=r * c, max_size=r * c))
    p = DenseMatrix(r, c, pattern)
    b = data.draw(matrices(c, 3))
    a = data.draw(matrices(3, r))
    assert field.mat_mul(p, b).tolist() == naive_mul(p, b)
    assert field.mat_mul(a, p).tolist() == naive_mul(a, p)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_mul_associative_and_kron_mixed_product(data):
    a, b, c = (data.draw(matrices(2, 2)) for _ in range(3))
    d = data.draw(matrices(2, 2))
    assert (a @ b) @ c == a @ (b @ c)
    assert field.kron(a, b) @ field.kron(c, d) == field.kron(a @ c, b @ d)


@settings(max_examples=40, deadline=None)
@given(any_matrix(), scalars)
def test_add_scale_transpose(a, s):
    assert a + field.zero(a.rows, a.cols) == a
    assert (a - a).is_zero()
    assert field.transpose(field.transpose(a)) == a
    assert field.scale(s, a) + field.scale(-s, a) == field.zero(a.rows, a.cols)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_inverse_is_two_sided(n, data):
    a = data.draw(matrices(n, n))
    if field.is_invertible(a):
        inv = field.inverse(a)
        assert a @ inv == field.identity(n) == inv @ a


def test_canonical_storage_makes_equal_values_equal():
    a = DenseMatrix(1, 2, [Fraction(2, 2), "4/2"])
    assert a == DenseMatrix(1, 2, [1, 2])
    assert hash(a) == hash(DenseMatrix(1, 2, [1, 2]))
