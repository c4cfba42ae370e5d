"""Certified upper bounds on square roots of rationals.

Heron's method started at max(x, 1) approaches sqrt(x) from above: by AM-GM
every averaged iterate satisfies r*r >= x, so the loop may stop at any point
and still return a sound upper bound. Each iterate is rounded up to a fixed
decimal grid; the raw recurrence doubles operand size every step over exact
rationals, and the round-up caps that growth without ever dipping below the
true root.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .rational import Q, round_up

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SqrtConfig:
    """Tuning knobs for sqrt_upper_bound.

    err_tolerance: step-decrease threshold that ends the loop. Once an
    iterate drops by no more than this, r - x/r <= 2*err_tolerance holds,
    hence r*r - x <= 2*err_tolerance*r.
    max_iterations: loop cap for when the tolerance is never reached.
    iterate_precision_places: decimal places iterates are rounded up to.
    Must stay well finer than err_tolerance or the stop test is meaningless.
    """

    err_tolerance: Q = Q(1, 10 ** 11)
    max_iterations: int = 2 * 10 ** 6
    iterate_precision_places: int = 40

    def __post_init__(self) -> None:
        if self.err_tolerance <= 0:
            raise ValueError("err_tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.iterate_precision_places < 20:
            raise ValueError("iterate_precision_places must be at least 20")


DEFAULT_SQRT_CONFIG = SqrtConfig()


def heron_step(r: Q, x: Q, places: int) -> Q:
    # Round-up preserves the invariant r*r >= x: the average satisfies it by
    # AM-GM, and moving toward plus infinity cannot break it.
    return round_up((r + x / r) / 2, places)


def sqrt_upper_bound(x: Q, cfg: SqrtConfig | None = None) -> tuple[Q, bool]:
    """Returns (r, converged) with r >= sqrt(x) >= 0 unconditionally.

    The bound is sound even when the iteration budget runs out; a False
    second component only means the requested tolerance was not reached,
    and is also logged as a warning.
    """
    if cfg is None:
        cfg = DEFAULT_SQRT_CONFIG
    if x < 0:
        raise ValueError("sqrt_upper_bound requires x >= 0")
    if x == 0:
        return Q(0), True
    r = x if x > 1 else Q(1)
    for _ in range(cfg.max_iterations):
        previous = r
        r = heron_step(r, x, cfg.iterate_precision_places)
        if previous - r <= cfg.err_tolerance:
            return r, True
    logger.warning(
        "sqrt iteration budget (%d) exhausted before reaching tolerance; "
        "returning the current sound upper bound",
        cfg.max_iterations,
    )
    return r, False
