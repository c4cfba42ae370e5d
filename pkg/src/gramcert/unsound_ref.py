"""Single-precision reference certifier with three known-unsound behaviors.

Everything here runs under emulated IEEE-754 binary32 (numpy float32, round
to nearest even on every operation). The routines reproduce, in miniature,
failure modes that make floating-point certifiers accept inputs they should
not:

- power-method norm estimation whose normalization divides by ||v|| + eps;
  once ||v|| falls to the order of eps the iterate shrinks every step, and
  the final guarded ratio underestimates the true operator norm;
- a rival-logit bound that masks every entry tied with the maximum to -inf,
  so outputs with a tied maximum "certify" at any radius;
- margin norms computed as sqrt of a sum of squares, where squaring
  subnormal-scale weights underflows to zero and yields a margin bound of
  exactly 0.

Test material only: neither the CLI nor the service imports this module.
"""

from __future__ import annotations

import numpy as np

F32_TINY = float(np.finfo(np.float32).tiny)

__all__ = [
    "F32_TINY",
    "f32",
    "f32_add",
    "f32_mul",
    "f32_div",
    "f32_sqrt",
    "ref_power_method_norm",
    "ref_bot_logit",
    "ref_tiny_weight_lipschitz",
]


def f32(x) -> np.float32:
    return np.float32(x)


def f32_add(a, b) -> np.float32:
    return np.float32(np.float32(a) + np.float32(b))


def f32_mul(a, b) -> np.float32:
    return np.float32(np.float32(a) * np.float32(b))


def f32_div(a, b) -> np.float32:
    return np.float32(np.float32(a) / np.float32(b))


def f32_sqrt(a) -> np.float32:
    return np.float32(np.sqrt(np.float32(a)))


def _norm32(v: np.ndarray) -> np.float32:
    # Sequential accumulation, one rounding per operation.
    total = np.float32(0.0)
    for x in v:
        total = np.float32(total + np.float32(x * x))
    return np.float32(np.sqrt(total))


def ref_power_method_norm(M, iters: int, eps_guard: float = 1e-9) -> float:
    """Operator norm estimate by power iteration with a guarded normalization.

    v starts all-ones; each step applies transpose(M)*M and then divides by
    ||v|| + eps_guard. Dividing by strictly more than ||v|| shrinks the
    iterate, and once ||v|| is at or below eps_guard the shrinkage compounds
    geometrically; the returned ||M v|| / (||v|| + eps_guard) then lands far
    below the true norm. With enough iterations the iterate underflows to
    exactly zero and the estimate with it.
    """
    if iters < 1:
        raise ValueError("iters must be at least 1")
    A = np.array(M, dtype=np.float32)
    if A.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    eps = np.float32(eps_guard)
    v = np.ones(A.shape[1], dtype=np.float32)
    for _ in range(iters):
        v = (A.T @ (A @ v)).astype(np.float32)
        v = (v / np.float32(_norm32(v) + eps)).astype(np.float32)
    image_norm = _norm32((A @ v).astype(np.float32))
    return float(np.float32(image_norm / np.float32(_norm32(v) + eps)))


def ref_bot_logit(y, eps: float, L) -> float:
    """Highest logit any rival class could reach, as the reference computes it.

    z[i] = y[i] + eps * L[i][j] with j the argmax of y; then every entry
    EQUAL to the maximum (the maximum itself included) is masked to -inf and
    the max of what remains is returned. A tied maximum therefore masks all
    of its witnesses and the routine returns -inf, which downstream reads as
    "no rival can overtake", certifying the output at any radius.
    """
    if len(y) < 2:
        raise ValueError("need at least two logits")
    logits = np.array(y, dtype=np.float32)
    table = np.array(L, dtype=np.float32)
    if table.shape != (len(y), len(y)):
        raise ValueError("bounds table shape must match the logit count")
    eps32 = np.float32(eps)
    j = int(np.argmax(logits))
    top = logits[j]
    masked = []
    for i in range(len(logits)):
        if logits[i] == top:
            masked.append(np.float32("-inf"))
        else:
            reach = np.float32(logits[i] + np.float32(eps32 * table[i][j]))
            masked.append(reach)
    return float(max(masked))


def ref_tiny_weight_lipschitz(M) -> float:
    """Margin norm between the first two output rows, in single precision.

    Computes ||row1 - row0|| the obvious way: square, sum, square root.
    Squares of subnormal-scale differences underflow to zero, so weights near
    the bottom of the normal range produce a margin bound of exactly 0.0, and
    a certifier built on it accepts every input at every radius.
    """
    A = np.array(M, dtype=np.float32)
    if A.ndim != 2 or A.shape[0] < 2:
        raise ValueError("need a matrix with at least two rows")
    diff = (A[1] - A[0]).astype(np.float32)
    return float(_norm32(diff))
