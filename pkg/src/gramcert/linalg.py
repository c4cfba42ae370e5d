"""Exact vectors and matrices, plus the norm bounds the certifier needs.

Vectors are lists of rationals and matrices are lists of rows, treated as
immutable values. Norm routines return sound upper bounds, never estimates
from below. Hot paths rescale everything to a shared integer denominator
first so the inner loops run on plain integers.
"""

from __future__ import annotations

from math import lcm

from .rational import Q, truncate
from .sqrt import SqrtConfig, sqrt_upper_bound

Vector = list[Q]
Matrix = list[list[Q]]

__all__ = [
    "Vector",
    "Matrix",
    "dims",
    "check_matrix",
    "dot",
    "mv_product",
    "minus",
    "integer_grid",
    "mtm",
    "frobenius_norm_upper_bound",
    "l2_upper_bound",
    "matrix_div",
    "truncate_with_error",
    "is_zero_matrix",
]


def dims(M: Matrix) -> tuple[int, int]:
    return len(M), len(M[0])


def check_matrix(M: Matrix) -> None:
    if not M or not M[0]:
        raise ValueError("matrix must be non-empty")
    width = len(M[0])
    for row in M:
        if len(row) != width:
            raise ValueError("matrix rows must all have the same length")


def dot(v: Vector, u: Vector) -> Q:
    if len(v) != len(u):
        raise ValueError(f"dot: length mismatch ({len(v)} vs {len(u)})")
    return sum((a * b for a, b in zip(v, u)), Q(0))


def mv_product(M: Matrix, v: Vector) -> Vector:
    rows, cols = dims(M)
    if len(v) != cols:
        raise ValueError(f"mv_product: matrix is {rows}x{cols}, vector has length {len(v)}")
    return [dot(row, v) for row in M]


def minus(v: Vector, u: Vector) -> Vector:
    if len(v) != len(u):
        raise ValueError(f"minus: length mismatch ({len(v)} vs {len(u)})")
    return [a - b for a, b in zip(v, u)]


def integer_grid(M: Matrix) -> tuple[int, list[list[int]]]:
    """Rescales M to integer numerators over one shared positive denominator."""
    den = 1
    for row in M:
        for x in row:
            den = lcm(den, x.denominator)
    return den, [[x.numerator * (den // x.denominator) for x in row] for row in M]


def mtm(M: Matrix) -> Matrix:
    """Computes transpose(M) * M without materializing the transpose.

    The result is cols x cols and exactly symmetric: entry (i, j) is the dot
    product of columns i and j, so only the upper triangle is computed and
    the lower triangle aliases the same values. The column dots run on the
    shared-denominator integer grid.
    """
    check_matrix(M)
    den, grid = integer_grid(M)
    columns = list(zip(*grid))
    den_sq = den * den
    n = len(columns)
    out: Matrix = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        ci = columns[i]
        for j in range(i, n):
            value = Q(sum(a * b for a, b in zip(ci, columns[j])), den_sq)
            out[i][j] = value
            out[j][i] = value
    return out


def frobenius_norm_upper_bound(M: Matrix, cfg: SqrtConfig | None = None) -> Q:
    """Upper bound on the Frobenius norm, hence also on the operator norm."""
    check_matrix(M)
    den, grid = integer_grid(M)
    total = 0
    for row in grid:
        for a in row:
            total += a * a
    bound, _ = sqrt_upper_bound(Q(total, den * den), cfg)
    return bound


def l2_upper_bound(v: Vector, cfg: SqrtConfig | None = None) -> Q:
    """Upper bound on the euclidean norm of v."""
    if not v:
        raise ValueError("vector must be non-empty")
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    total = 0
    for x in v:
        a = x.numerator * (den // x.denominator)
        total += a * a
    bound, _ = sqrt_upper_bound(Q(total, den * den), cfg)
    return bound


def matrix_div(M: Matrix, r: Q) -> Matrix:
    if r <= 0:
        raise ValueError("matrix_div requires a positive divisor")
    return [[x / r for x in row] for row in M]


def truncate_with_error(M: Matrix, places: int) -> tuple[Matrix, Matrix]:
    """Entrywise truncation toward minus infinity plus the exact error matrix.

    Requires a square symmetric input: the downstream error accounting bounds
    eigenvalue movement, which is only valid for symmetric matrices. Returns
    (T, E) with T + E = M entrywise and every E entry in [0, 10**-places).
    """
    check_matrix(M)
    rows, cols = dims(M)
    if rows != cols:
        raise ValueError("truncate_with_error requires a square matrix")
    for i in range(rows):
        for j in range(i + 1, cols):
            if M[i][j] != M[j][i]:
                raise ValueError("truncate_with_error requires a symmetric matrix")
    truncated: Matrix = []
    errors: Matrix = []
    for row in M:
        trow: list[Q] = []
        erow: list[Q] = []
        for x in row:
            t, err = truncate(x, places)
            trow.append(t)
            erow.append(err)
        truncated.append(trow)
        errors.append(erow)
    return truncated, errors


def is_zero_matrix(M: Matrix) -> bool:
    return all(x == 0 for row in M for x in row)
