"""Sound operator-norm upper bounds by Gram iteration.

Each iteration replaces M with its normalized, truncated Gram matrix
transpose(M)*M, which squares the operator norm. The Frobenius norm of the
final iterate bounds its operator norm from above, and unwinding the
iterations with one square root per level recovers a bound for the original
matrix that tightens as n grows (the Frobenius/operator gap only survives
through a 2^n-th root).

Normalizing by the Frobenius bound keeps entries near unit scale, and
truncating to a fixed decimal grid caps coefficient growth that would
otherwise square every step. The truncation error matrix is itself
norm-bounded and added back before each square root: for symmetric matrices
the top eigenvalue moves by at most the error's operator norm, so the final
value stays an upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Matrix,
    frobenius_norm_upper_bound,
    is_zero_matrix,
    matrix_div,
    mtm,
    truncate_with_error,
)
from .rational import Q
from .sqrt import SqrtConfig, sqrt_upper_bound

TRUNCATION_PLACES = 16


@dataclass(frozen=True)
class IterationRecord:
    """Normalization scale and truncation-error norm bound for one iteration."""

    scale: Q
    err_bound: Q

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.err_bound < 0:
            raise ValueError("err_bound must be nonnegative")


@dataclass(frozen=True)
class OperatorNormBound:
    """A certified upper bound and the iteration count that produced it."""

    value: Q
    iterations: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("bound must be nonnegative")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")


def gram_reduce(
    M: Matrix,
    n: int,
    cfg: SqrtConfig | None = None,
    places: int = TRUNCATION_PLACES,
) -> tuple[list[IterationRecord], Matrix]:
    """Runs n Gram iterations on M.

    Returns the per-iteration records, most recent first, and the final
    reduced matrix. A zero Gram matrix gets scale 1 so the division is a
    no-op instead of undefined.
    """
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    records: list[IterationRecord] = []
    for _ in range(n):
        gram = mtm(M)
        scale = Q(1) if is_zero_matrix(gram) else frobenius_norm_upper_bound(gram, cfg)
        M, err = truncate_with_error(matrix_div(gram, scale), places)
        records.insert(0, IterationRecord(scale, frobenius_norm_upper_bound(err, cfg)))
    return records, M


def expand(records: list[IterationRecord], v: Q, cfg: SqrtConfig | None = None) -> Q:
    """Unwinds iteration records over a norm bound v of the reduced matrix.

    Head first: the most recent iteration is undone first. Each level applies
    v <- sqrt_upper_bound(scale * (v + err_bound)), the sound counterpart of
    norm(M) = sqrt(norm of the Gram matrix) with the truncation error
    restored before the root.
    """
    for record in records:
        v, _ = sqrt_upper_bound(record.scale * (v + record.err_bound), cfg)
    return v


def gram_iteration(
    M: Matrix,
    n: int,
    cfg: SqrtConfig | None = None,
    places: int = TRUNCATION_PLACES,
) -> OperatorNormBound:
    """Returns a certified upper bound on the operator norm of M.

    n = 0 degenerates to the plain Frobenius bound, valid but loose; each
    additional iteration roughly squares the relative tightness at one
    matrix product of cost per step.
    """
    records, reduced = gram_reduce(M, n, cfg, places)
    value = expand(records, frobenius_norm_upper_bound(reduced, cfg), cfg)
    return OperatorNormBound(value=value, iterations=n)
