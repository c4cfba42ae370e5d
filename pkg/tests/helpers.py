"""Shared generators and exact comparison helpers for the test suite."""

from __future__ import annotations

import random

from gramcert.rational import Q


def rand_rational(rng: random.Random, places: int = 4, lo: int = -1, hi: int = 1) -> Q:
    scale = 10 ** places
    return Q(rng.randint(lo * scale, hi * scale), scale)


def rand_vector(rng: random.Random, n: int, places: int = 4) -> list[Q]:
    return [rand_rational(rng, places) for _ in range(n)]


def rand_matrix(rng: random.Random, rows: int, cols: int, places: int = 4) -> list[list[Q]]:
    return [rand_vector(rng, cols, places) for _ in range(rows)]


def rand_symmetric(rng: random.Random, n: int, places: int = 4) -> list[list[Q]]:
    M = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = rand_rational(rng, places)
            M[i][j] = x
            M[j][i] = x
    return M


def rand_net(
    rng: random.Random,
    max_layers: int = 4,
    max_width: int = 8,
    outputs: int | None = None,
    places: int = 4,
) -> list[list[list[Q]]]:
    depth = rng.randint(1, max_layers)
    widths = [rng.randint(1, max_width) for _ in range(depth + 1)]
    if outputs is not None:
        widths[-1] = outputs
    # layer i maps widths[i] inputs to widths[i+1] outputs: rows x cols
    return [
        rand_matrix(rng, widths[i + 1], widths[i], places) for i in range(depth)
    ]


def sq_norm(v: list[Q]) -> Q:
    return sum((x * x for x in v), Q(0))
