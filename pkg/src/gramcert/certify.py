"""Output certification against a precomputed margin-bounds table.

An output vector v is certified for radius e when every rival class margin
strictly exceeds the largest swing the bounds allow:

    v[x] - v[i] > table[i][x] * e   for every i != x, x the argmax.

The comparison is strict, so a tied maximum is always rejected: whatever
input produced the output sits on a decision boundary and no positive margin
vouches for it. Certification reads only the output vector and the table;
cost is linear in the number of classes and independent of the network the
table came from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import Vector
from .lipschitz import LipschitzBounds
from .nn import argmax
from .rational import Q


@dataclass(frozen=True)
class CertificationResult:
    """Verdict for one output vector.

    failing_index is the lowest rival class whose margin check failed, or
    None when certified.
    """

    certified: bool
    argmax_index: int
    failing_index: Optional[int] = None


def certify(v_out: Vector, e: Q, bounds: LipschitzBounds) -> CertificationResult:
    """Checks v_out against the table; rejects on the first failing class."""
    if len(v_out) != bounds.dim:
        raise ValueError(
            f"output has length {len(v_out)}, bounds table is {bounds.dim}x{bounds.dim}"
        )
    if e < 0:
        raise ValueError("perturbation bound must be nonnegative")
    x = argmax(v_out)
    top = v_out[x]
    for i, value in enumerate(v_out):
        if i == x:
            continue
        if bounds.table[i][x] * e >= top - value:
            return CertificationResult(certified=False, argmax_index=x, failing_index=i)
    return CertificationResult(certified=True, argmax_index=x)
