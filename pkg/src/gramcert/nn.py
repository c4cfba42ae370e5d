"""Dense ReLU network semantics over exact rationals.

A network is a list of weight matrices applied first to last, ReLU after
every layer except the last, no biases. A matrix's row count is its output
dimension, so consecutive layers must satisfy
rows(layers[i]) = cols(layers[i+1]).
"""

from __future__ import annotations

import hashlib
import random
from math import isqrt, lcm

from .linalg import Matrix, Vector, check_matrix, integer_grid, mv_product
from .rational import Q, rational_str

NeuralNet = list[Matrix]

__all__ = [
    "NeuralNet",
    "check_network",
    "is_input",
    "relu",
    "apply_nn",
    "argmax",
    "model_digest",
    "sampled_robustness_check",
]


def check_network(layers: NeuralNet) -> None:
    if not layers:
        raise ValueError("network must have at least one layer")
    for layer in layers:
        check_matrix(layer)
    for index in range(len(layers) - 1):
        produced = len(layers[index])
        expected = len(layers[index + 1][0])
        if produced != expected:
            raise ValueError(
                f"layer {index} outputs {produced} values "
                f"but layer {index + 1} expects {expected}"
            )


def is_input(v: Vector, layers: NeuralNet) -> bool:
    return len(v) == len(layers[0][0])


def relu(x: Q) -> Q:
    return x if x >= 0 else Q(0)


def apply_nn(layers: NeuralNet, v: Vector) -> Vector:
    """Runs the network on v: ReLU after every layer except the last."""
    if not is_input(v, layers):
        raise ValueError(
            f"input has length {len(v)}, first layer expects {len(layers[0][0])}"
        )
    for layer in layers[:-1]:
        v = [relu(x) for x in mv_product(layer, v)]
    return mv_product(layers[-1], v)


def argmax(v: Vector) -> int:
    """Index of the maximum component; ties resolve to the lowest index."""
    if not v:
        raise ValueError("argmax of an empty vector")
    best = 0
    for i in range(1, len(v)):
        if v[i] > v[best]:
            best = i
    return best


def model_digest(layers: NeuralNet) -> str:
    """Hex digest of the canonical exact serialization of the weights.

    Canonical means reduced num/den text, so the digest is independent of how
    the weights were spelled in the source file.
    """
    h = hashlib.sha256()
    for layer in layers:
        for row in layer:
            h.update(",".join(rational_str(x) for x in row).encode())
            h.update(b"\n")
        h.update(b"\n")
    return h.hexdigest()


def _grid_argmax(grids: list[tuple[int, list[list[int]]]], v: Vector) -> int:
    # Forward pass on integer numerators. Denominators are positive and shared
    # per vector, so ReLU clamps and the final comparison are unaffected.
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    nums = [x.numerator * (den // x.denominator) for x in v]
    for _, grid in grids[:-1]:
        nums = [max(0, sum(w * a for w, a in zip(row, nums))) for row in grid]
    _, last = grids[-1]
    out = [sum(w * a for w, a in zip(row, nums)) for row in last]
    best = 0
    for i in range(1, len(out)):
        if out[i] > out[best]:
            best = i
    return best


def sampled_robustness_check(
    layers: NeuralNet,
    v: Vector,
    e: Q,
    samples: int,
    seed: int,
) -> bool:
    """Random search for a perturbation within l2 distance e that changes the
    network's decision at v.

    False refutes robustness with a concrete witness; True is only evidence,
    never proof. Directions are integer lattice vectors scaled by
    e * radius / ceil(sqrt(sum of squares)), so the norm constraint
    ||delta||^2 <= e^2 holds exactly with no floating point anywhere.
    """
    if e < 0:
        raise ValueError("perturbation bound must be nonnegative")
    if samples < 0:
        raise ValueError("sample count must be nonnegative")
    if not is_input(v, layers):
        raise ValueError(
            f"input has length {len(v)}, first layer expects {len(layers[0][0])}"
        )
    check_network(layers)
    baseline = argmax(apply_nn(layers, v))
    if e == 0 or len(layers[-1]) == 1:
        return True
    rng = random.Random(seed)
    dim = len(v)
    grids = [integer_grid(layer) for layer in layers]
    for _ in range(samples):
        direction = [rng.randint(-1000, 1000) for _ in range(dim)]
        norm_sq = sum(c * c for c in direction)
        if norm_sq == 0:
            continue
        bound = isqrt(norm_sq)
        if bound * bound < norm_sq:
            bound += 1
        radius = Q(rng.randint(1, 4), 4)
        scale = e * radius / bound
        u = [a + c * scale for a, c in zip(v, direction)]
        if _grid_argmax(grids, u) != baseline:
            return False
    return True
