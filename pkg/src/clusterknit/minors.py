"""Symbolic minors of unitriangular matrices and the interval-to-minor
dictionary for linearly ordered type A."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError
from .laurent import LaurentPoly, exact_div


@dataclass(frozen=True)
class SymbolicMatrix:
    size: int
    arity: int
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]


@dataclass(frozen=True)
class MinorKey:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows)))
        object.__setattr__(self, "cols", tuple(sorted(self.cols)))
        if len(self.rows) != len(self.cols):
            raise ShapeError(
                f"row set {self.rows} and column set {self.cols} differ in size"
            )


def unitriangular(size: int) -> SymbolicMatrix:
    """Unitriangular matrix with fresh variables x_1, x_2, ... filling the
    strictly-upper entries row-major (row 1 first)."""
    if size < 2:
        raise ShapeError("need size >= 2")
    arity = size * (size - 1) // 2
    idx = 0
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == j:
                row.append(LaurentPoly.one(arity))
            elif i < j:
                row.append(LaurentPoly.variable(idx, arity))
                idx += 1
            else:
                row.append(LaurentPoly.zero(arity))
        rows.append(tuple(row))
    return SymbolicMatrix(size, arity, tuple(rows))


def _det_cofactor(rows) -> LaurentPoly:
    m = len(rows)
    arity = rows[0][0].arity
    if m == 1:
        return rows[0][0]
    total = LaurentPoly.zero(arity)
    for j in range(m):
        if rows[0][j].is_zero():
            continue
        sub = [
            [row[jj] for jj in range(m) if jj != j] for row in rows[1:]
        ]
        term = rows[0][j] * _det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows) -> LaurentPoly:
    m = len(rows)
    arity = rows[0][0].arity
    a = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.one(arity)
    for k in range(m - 1):
        if a[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, m) if not a[i][k].is_zero()), None
            )
            if pivot_row is None:
                return LaurentPoly.zero(arity)
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = exact_div(
                    a[i][j] * a[k][k] - a[i][k] * a[k][j], prev
                )
        prev = a[k][k]
    det = a[m - 1][m - 1]
    return det if sign == 1 else -det


def minor(mtx: SymbolicMatrix, key: MinorKey) -> LaurentPoly:
    """Exact determinant of the submatrix on the given rows and columns."""
    for x in key.rows + key.cols:
        if not (1 <= x <= mtx.size):
            raise ShapeError(f"index {x} out of range 1..{mtx.size}")
    rows = [
        [mtx[i, j] for j in key.cols] for i in key.rows
    ]
    if not rows:
        return LaurentPoly.one(mtx.arity)
    if len(rows) < 6:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def interval_minor_key(i: int, a: int, b: int, n: int) -> MinorKey:
    """Rows [1, i-a], columns [1, i-b-1] + [n-b+1, n-a+1], the key whose
    minor realizes the interval variable T_{i,[a,b]} on the linearly
    ordered type A_n quiver (t_i = i - 1).  [1,0] is empty."""
    if not (1 <= i <= n and 0 <= a <= b <= i - 1):
        raise IndexError(f"need 1 <= i <= {n} and 0 <= a <= b <= i-1")
    rows = tuple(range(1, i - a + 1))
    cols = tuple(range(1, i - b)) + tuple(range(n - b + 1, n - a + 2))
    return MinorKey(rows, cols)


def _matmul(a, b, arity):
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = LaurentPoly.zero(arity)
            for k in range(size):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def one_param_product(word, size: int) -> SymbolicMatrix:
    """Exact product of elementary unitriangular factors: the l-th factor
    is the identity plus t_l in entry (i_l, i_l + 1)."""
    word = tuple(word)
    arity = len(word)
    for letter in word:
        if not (1 <= letter < size):
            raise IndexError(f"letter {letter} needs 1 <= letter < {size}")
    prod = [
        tuple(
            LaurentPoly.one(arity) if i == j else LaurentPoly.zero(arity)
            for j in range(size)
        )
        for i in range(size)
    ]
    for l, letter in enumerate(word):
        factor = [
            [
                LaurentPoly.one(arity) if i == j else LaurentPoly.zero(arity)
                for j in range(size)
            ]
            for i in range(size)
        ]
        factor[letter - 1][letter] = LaurentPoly.variable(l, arity)
        prod = _matmul(prod, factor, arity)
    return SymbolicMatrix(size, arity, tuple(prod))


def w_minor(prefix, j: int, size: int) -> MinorKey:
    """Key of the extremal minor for a word prefix: rows [1, j], columns the
    image of [1, j] under s_{i_1} ... s_{i_k} acting as adjacent
    transpositions of [1, size]."""
    prefix = tuple(prefix)
    if not (1 <= j < size):
        raise IndexError(f"need 1 <= j < {size}")
    for letter in prefix:
        if not (1 <= letter < size):
            raise IndexError(f"letter {letter} needs 1 <= letter < {size}")

    def act(x: int) -> int:
        for letter in reversed(prefix):
            if x == letter:
                x = letter + 1
            elif x == letter + 1:
                x = letter
        return x

    cols = tuple(sorted(act(x) for x in range(1, j + 1)))
    return MinorKey(tuple(range(1, j + 1)), cols)
