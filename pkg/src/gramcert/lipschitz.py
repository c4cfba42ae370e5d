"""Margin Lipschitz bounds for output-class pairs.

For classes i and k, the margin N(v)[k] - N(v)[i] moves by at most

    L = s[0] * ... * s[n-2] * l2_upper_bound(lastLayer[k] - lastLayer[i])

per unit l2 change in the input: ReLU is 1-Lipschitz, each hidden layer
stretches distances by at most its operator norm s[j], and the final row
difference collapses the margin to one dot product bounded by Cauchy-Schwarz.
Certification later needs nothing but this table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gram import gram_iteration
from .linalg import frobenius_norm_upper_bound, l2_upper_bound, minus
from .nn import NeuralNet, check_network, model_digest
from .rational import Q
from .sqrt import SqrtConfig


@dataclass(frozen=True)
class LipschitzBounds:
    """Certified pairwise margin bounds.

    The table is symmetric; the diagonal is zero and never read. The digest
    ties the table to the exact weights it was computed from, and
    gram_iterations records how hard the operator norms were tightened.
    """

    table: list[list[Q]]
    gram_iterations: int
    model_digest: str

    @property
    def dim(self) -> int:
        return len(self.table)


def gen_lipschitz_bound(
    layers: NeuralNet,
    i: int,
    k: int,
    s: list[Q],
    cfg: SqrtConfig | None = None,
) -> Q:
    """Margin bound for the class pair (i, k) given per-layer operator norm
    bounds s.

    s has one slot per layer; the last slot is not used (the final layer
    enters through the row difference instead) but must be present so s
    aligns with the network.
    """
    last = layers[-1]
    classes = len(last)
    if not (0 <= i < classes and 0 <= k < classes):
        raise ValueError(f"class index out of range for {classes} outputs")
    if i == k:
        raise ValueError("margin bound requires two distinct classes")
    if len(s) != len(layers):
        raise ValueError(
            f"need one operator-norm slot per layer ({len(layers)}), got {len(s)}"
        )
    bound = l2_upper_bound(minus(last[k], last[i]), cfg)
    for j in range(len(layers) - 1):
        bound = s[j] * bound
    return bound


def gen_all_bounds(
    layers: NeuralNet,
    gram_n: int,
    cfg: SqrtConfig | None = None,
) -> LipschitzBounds:
    """Computes the full pairwise bounds table for a network.

    Hidden-layer operator norms come from gram iteration; the last slot is
    filled with the final layer's Frobenius bound for alignment but never
    multiplied in. Each unordered class pair is computed once and mirrored.
    """
    check_network(layers)
    s = [gram_iteration(layer, gram_n, cfg).value for layer in layers[:-1]]
    s.append(frobenius_norm_upper_bound(layers[-1], cfg))
    classes = len(layers[-1])
    table = [[Q(0)] * classes for _ in range(classes)]
    for i in range(classes):
        for k in range(i + 1, classes):
            bound = gen_lipschitz_bound(layers, i, k, s, cfg)
            table[i][k] = bound
            table[k][i] = bound
    return LipschitzBounds(
        table=table,
        gram_iterations=gram_n,
        model_digest=model_digest(layers),
    )
