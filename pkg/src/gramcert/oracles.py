"""Brute-force references the test suite compares the production code against.

Everything here is exact: matrix products by the textbook triple loop, and
operator-norm lower bounds via exact Rayleigh ratios of integer probe
vectors. A Rayleigh ratio is a valid lower bound for any probe, so an
unconverged power method can never cause a false alarm when sandwiched
against the certified upper bounds; comparisons elsewhere use the squared
forms directly to avoid square-root slack.
"""

from __future__ import annotations

import random
from math import isqrt, lcm

from .linalg import Matrix, dims, mv_product
from .rational import Q
from .sqrt import sqrt_upper_bound

__all__ = [
    "transpose",
    "naive_mm_product",
    "sampled_opnorm_sq",
    "sampled_opnorm_lower_bound",
    "power_method_sq",
    "correct_power_method",
]


def transpose(M: Matrix) -> Matrix:
    return [list(column) for column in zip(*M)]


def naive_mm_product(A: Matrix, B: Matrix) -> Matrix:
    rows_a, cols_a = dims(A)
    rows_b, cols_b = dims(B)
    if cols_a != rows_b:
        raise ValueError(f"cannot multiply {rows_a}x{cols_a} by {rows_b}x{cols_b}")
    out: Matrix = []
    for i in range(rows_a):
        row: list[Q] = []
        for j in range(cols_b):
            acc = Q(0)
            for k in range(cols_a):
                acc += A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _ratio_sq(M: Matrix, probe: list[int]) -> Q:
    # ||M p||^2 / ||p||^2, exact.
    image = mv_product(M, [Q(c) for c in probe])
    num = sum((x * x for x in image), Q(0))
    den = sum(c * c for c in probe)
    return num / den


def _rational_root_lower(s: Q) -> Q:
    """Largest convenient rational at or below sqrt(s).

    Exact when s is a perfect rational square; otherwise s divided by a
    certified upper bound on sqrt(s), which sits strictly below the root.
    """
    if s == 0:
        return Q(0)
    num, den = s.numerator, s.denominator
    root_num, root_den = isqrt(num), isqrt(den)
    if root_num * root_num == num and root_den * root_den == den:
        return Q(root_num, root_den)
    upper, _ = sqrt_upper_bound(s)
    return s / upper


def sampled_opnorm_sq(M: Matrix, probes: int, seed: int) -> Q:
    """Max exact squared Rayleigh ratio over random integer probes.

    The axis-aligned probes are always included, so a nonzero matrix never
    samples as zero and 1x1 matrices are evaluated exactly.
    """
    if probes < 1:
        raise ValueError("probes must be at least 1")
    rng = random.Random(seed)
    cols = dims(M)[1]
    best = Q(0)
    for axis in range(cols):
        probe = [0] * cols
        probe[axis] = 1
        best = max(best, _ratio_sq(M, probe))
    for _ in range(probes):
        probe = [rng.randint(-99, 99) for _ in range(cols)]
        if any(probe):
            best = max(best, _ratio_sq(M, probe))
    return best


def sampled_opnorm_lower_bound(M: Matrix, probes: int, seed: int) -> Q:
    """Rational lower bound on the operator norm from random probing."""
    return _rational_root_lower(sampled_opnorm_sq(M, probes, seed))


def power_method_sq(M: Matrix, iters: int, seed: int) -> Q:
    """Exact squared Rayleigh ratio after power iteration on transpose(M)*M.

    Normalizing by the max-abs component each step would only rescale the
    iterate, so the integer numerator vector is iterated directly: the
    direction sequence is identical and the final ratio exact. Whatever the
    convergence state (including a start vector orthogonal to the top
    singular direction), the result is a valid squared lower bound.
    """
    if iters < 1:
        raise ValueError("iters must be at least 1")
    rng = random.Random(seed)
    gram = naive_mm_product(transpose(M), M)
    den = 1
    for row in gram:
        for x in row:
            den = lcm(den, x.denominator)
    grid = [[x.numerator * (den // x.denominator) for x in row] for row in gram]
    v = [rng.randint(1, 9) for _ in range(len(grid))]
    for _ in range(iters):
        w = [sum(a * c for a, c in zip(row, v)) for row in grid]
        if all(c == 0 for c in w):
            break
        v = w
    vq = [Q(c) for c in v]
    image = mv_product(M, vq)
    num = sum((x * x for x in image), Q(0))
    den_sq = sum((x * x for x in vq), Q(0))
    if den_sq == 0:
        return Q(0)
    return num / den_sq


def correct_power_method(M: Matrix, iters: int, seed: int) -> Q:
    """Rational lower bound on the operator norm via the power method."""
    return _rational_root_lower(power_method_sq(M, iters, seed))
