"""Exact rational scalars and dense matrices over them.

Scalars are :class:`fractions.Fraction` values, stored as plain ``int`` whenever
the denominator is 1 so that integral workloads run on machine-speed ints.
Matrices are immutable, row-major, and may have zero rows or zero columns.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import accumulate
from numbers import Rational as _RationalABC
from operator import mul
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class ShapeError(ValueError):
    """Raised when operand shapes do not fit together."""


def rational(x) -> Rational:
    """Coerce ``x`` (int, Fraction, or a ``"p/q"`` string) to canonical form."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        text = x.strip()
        if not text or any(c in text for c in ".eE_ "):
            raise ValueError(f"not a rational literal: {x!r}")
        return rational(Fraction(text))
    if isinstance(x, _RationalABC):
        return rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def format_rational(x: Rational) -> str:
    x = rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def _canon(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class DenseMatrix:
    """Immutable ``rows x cols`` matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data", "_hash", "_pattern")

    def __init__(self, rows: int, cols: int, data: Iterable = ()):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        data = tuple(rational(x) for x in data)
        if len(data) != rows * cols:
            raise ShapeError(f"{len(data)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None
        self._pattern = None

    @classmethod
    def _raw(cls, rows, cols, data):
        # trusted constructor: data is already a canonical tuple
        m = object.__new__(cls)
        m.rows, m.cols, m.data, m._hash, m._pattern = rows, cols, data, None, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.data[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.data[i * self.cols + j]

    @property
    def T(self) -> "DenseMatrix":
        return transpose(self)

    def is_zero(self) -> bool:
        return not any(self.data)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"DenseMatrix({self.rows}x{self.cols} [{body}])"

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __matmul__(self, other):
        return mat_mul(self, other)


def zero(rows: int, cols: int) -> DenseMatrix:
    return DenseMatrix._raw(rows, cols, (0,) * (rows * cols))


def identity(n: int) -> DenseMatrix:
    data = [0] * (n * n)
    for i in range(n):
        data[i * n + i] = 1
    return DenseMatrix._raw(n, n, tuple(data))


def transpose(a: DenseMatrix) -> DenseMatrix:
    data = tuple(a.data[i * a.cols + j] for j in range(a.cols) for i in range(a.rows))
    return DenseMatrix._raw(a.cols, a.rows, data)


def scale(c, a: DenseMatrix) -> DenseMatrix:
    c = rational(c)
    return DenseMatrix._raw(a.rows, a.cols, tuple(_canon(c * x) for x in a.data))


def mat_add(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    return DenseMatrix._raw(a.rows, a.cols, tuple(_canon(x + y) for x, y in zip(a.data, b.data)))


def _to_ints(rows: list[tuple]) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row by row: ``row = ints / scale``."""
    out, scales = [], []
    for r in rows:
        d = 1
        for x in r:
            if type(x) is not int:
                d = math.lcm(d, x.denominator)
        scales.append(d)
        out.append(list(r) if d == 1 else
                   [x * d if type(x) is int else x.numerator * (d // x.denominator) for x in r])
    return out, scales


def _zero_one(a: DenseMatrix) -> bool:
    """Whether every entry is 0 or 1 (cached; projections, injections, diagonals)."""
    if a._pattern is None:
        a._pattern = all(x == 0 or (x == 1 and type(x) is int) for x in a.data)
    return a._pattern


def _add_all(xs):
    total = 0
    for x in xs:
        total += x
    return _canon(total)


def _select_rows(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    # a is 0/1: each output row is a sum of rows of b
    data = []
    for i in range(a.rows):
        picked = [t for t, x in enumerate(a.row(i)) if x]
        if len(picked) == 1:
            data.extend(b.row(picked[0]))
        else:
            data.extend(_add_all(b.data[t * b.cols + j] for t in picked) for j in range(b.cols))
    return DenseMatrix._raw(a.rows, b.cols, tuple(data))


def _select_cols(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    # b is 0/1: each output column is a sum of columns of a
    picked = [[t for t, x in enumerate(b.col(j)) if x] for j in range(b.cols)]
    data = []
    for i in range(a.rows):
        arow = a.row(i)
        data.extend(arow[p[0]] if len(p) == 1 else _add_all(arow[t] for t in p) for p in picked)
    return DenseMatrix._raw(a.rows, b.cols, tuple(data))


def mat_mul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Exact product ``a . b``.

    Denominators are cleared per row of ``a`` and per column of ``b`` so the
    inner products run on integers; each output entry is divided once.
    """
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    r, k, c = a.rows, a.cols, b.cols
    if r == 0 or c == 0 or k == 0:
        return zero(r, c)
    if _zero_one(a):
        return _select_rows(a, b)
    if _zero_one(b):
        return _select_cols(a, b)
    arows, ascale = _to_ints([a.row(i) for i in range(r)])
    bcols, bscale = _to_ints([b.col(j) for j in range(c)])
    nnz_b = sum(1 for col in bcols for x in col if x)
    out = []
    if nnz_b * 3 < k * c:
        # sparse right factor (projections, injections, permutations)
        brows = [[] for _ in range(k)]
        for j, col in enumerate(bcols):
            for t, y in enumerate(col):
                if y:
                    brows[t].append((j, y))
        for i in range(r):
            acc = [0] * c
            for t, x in enumerate(arows[i]):
                if x:
                    for j, y in brows[t]:
                        acc[j] += x * y
            out.append(acc)
    else:
        for i in range(r):
            arow = arows[i]
            out.append([sum(map(mul, arow, bc)) for bc in bcols])
    if all(s == 1 for s in ascale) and all(s == 1 for s in bscale):
        data = tuple(x for row in out for x in row)
    else:
        data = tuple(_canon(Fraction(x, ascale[i] * bscale[j])) if x else 0
                     for i, row in enumerate(out) for j, x in enumerate(row))
    return DenseMatrix._raw(r, c, data)


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    data = []
    for i in range(a.rows):
        arow = a.row(i)
        for p in range(b.rows):
            brow = b.row(p)
            for x in arow:
                data.extend(_canon(x * y) for y in brow)
    return DenseMatrix._raw(rows, cols, tuple(data))


def direct_sum(*blocks: DenseMatrix) -> DenseMatrix:
    """Block-diagonal matrix ``diag(blocks...)``; the empty sum is ``0x0``."""
    rows = sum(m.rows for m in blocks)
    cols = sum(m.cols for m in blocks)
    data = []
    left = 0
    for m in blocks:
        right = cols - left - m.cols
        for i in range(m.rows):
            data.extend((0,) * left)
            data.extend(m.row(i))
            data.extend((0,) * right)
        left += m.cols
    return DenseMatrix._raw(rows, cols, tuple(data))


def hstack(blocks: Sequence[DenseMatrix], rows: int | None = None) -> DenseMatrix:
    if not blocks:
        return zero(rows or 0, 0)
    r = blocks[0].rows
    if any(m.rows != r for m in blocks):
        raise ShapeError("hstack needs equal row counts")
    data = []
    for i in range(r):
        for m in blocks:
            data.extend(m.row(i))
    return DenseMatrix._raw(r, sum(m.cols for m in blocks), tuple(data))


def vstack(blocks: Sequence[DenseMatrix], cols: int | None = None) -> DenseMatrix:
    if not blocks:
        return zero(0, cols or 0)
    c = blocks[0].cols
    if any(m.cols != c for m in blocks):
        raise ShapeError("vstack needs equal column counts")
    return DenseMatrix._raw(sum(m.rows for m in blocks), c, tuple(x for m in blocks for x in m.data))


def submatrix(a: DenseMatrix, r0: int, r1: int, c0: int, c1: int) -> DenseMatrix:
    if not (0 <= r0 <= r1 <= a.rows and 0 <= c0 <= c1 <= a.cols):
        raise ShapeError(f"slice [{r0}:{r1}, {c0}:{c1}] outside {a.rows}x{a.cols}")
    w = c1 - c0
    data = []
    for i in range(r0, r1):
        data.extend(a.data[i * a.cols + c0:i * a.cols + c1])
    return DenseMatrix._raw(r1 - r0, w, tuple(data))


def offsets(parts: Sequence[int]) -> list[int]:
    """Start offsets of consecutive blocks, plus the total as a final element."""
    return [0, *accumulate(parts)]


def block(a: DenseMatrix, row_parts, col_parts, i: int, j: int) -> DenseMatrix:
    ro, co = offsets(row_parts), offsets(col_parts)
    return submatrix(a, ro[i], ro[i + 1], co[j], co[j + 1])


def permute(a: DenseMatrix, row_order: Sequence[int], col_order: Sequence[int]) -> DenseMatrix:
    """Matrix whose ``(i, j)`` entry is ``a[row_order[i], col_order[j]]``."""
    c = a.cols
    data = tuple(a.data[r * c + s] for r in row_order for s in col_order)
    return DenseMatrix._raw(len(row_order), len(col_order), data)


def inverse(a: DenseMatrix) -> DenseMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises ``ValueError`` if singular."""
    if a.rows != a.cols:
        raise ShapeError(f"non-square {a.rows}x{a.cols} matrix has no inverse")
    n = a.rows
    work = [[Fraction(x) for x in a.row(i)] + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return DenseMatrix(n, n, [x for row in work for x in row[n:]])


def is_invertible(a: DenseMatrix) -> bool:
    try:
        inverse(a)
    except (ValueError, ShapeError):
        return False
    return True
