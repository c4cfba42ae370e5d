"""Text formats: network weights in, margin-bounds tables out.

Model files carry one matrix row per line as comma-separated decimal
literals, with a single blank line between consecutive layers; a row's line
count is the layer's output dimension and its value count the input
dimension. Bounds files carry a small header plus one exact rational per
unordered class pair. Both formats parse exactly; nothing passes through
floating point, so write-then-read is the identity.
"""

from __future__ import annotations

import logging

from .lipschitz import LipschitzBounds
from .linalg import Matrix, Vector
from .nn import NeuralNet, check_network
from .rational import (
    ParseError,
    Q,
    decimal_str,
    parse_decimal,
    parse_rational,
    rational_str,
)
from .sqrt import DEFAULT_SQRT_CONFIG, SqrtConfig

logger = logging.getLogger(__name__)

BOUNDS_FORMAT_VERSION = "1"

__all__ = [
    "BOUNDS_FORMAT_VERSION",
    "parse_model",
    "format_model",
    "load_model",
    "save_model",
    "parse_vector_line",
    "dumps_bounds",
    "loads_bounds",
    "save_bounds",
    "load_bounds",
    "bounds_sqrt_config",
]


def parse_model(text: str) -> NeuralNet:
    """Parses model text into a list of weight matrices.

    Raises ParseError with line/column coordinates for malformed literals,
    and for empty layers; chain violations surface as the ValueError from
    check_network, naming both offending layers.
    """
    lines = text.split("\n")
    # tolerate trailing newlines: they would otherwise read as an empty layer
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise ParseError("model text is empty")
    layers: NeuralNet = []
    current: Matrix = []
    for lineno, line in enumerate(lines, start=1):
        if line.strip() == "":
            if not current:
                raise ParseError(f"empty layer ending at line {lineno}")
            layers.append(current)
            current = []
            continue
        row: list[Q] = []
        column = 1
        for token in line.split(","):
            try:
                row.append(parse_decimal(token))
            except ParseError as err:
                raise ParseError(f"line {lineno}, column {column}: {err}") from None
            column += len(token) + 1
        if current and len(row) != len(current[0]):
            raise ParseError(
                f"line {lineno}: row has {len(row)} values, "
                f"earlier rows in this layer have {len(current[0])}"
            )
        current.append(row)
    layers.append(current)
    check_network(layers)
    return layers


def format_model(layers: NeuralNet) -> str:
    """Renders a network in the model text format with exact decimals."""
    check_network(layers)
    blocks = [
        "\n".join(",".join(decimal_str(x) for x in row) for row in layer)
        for layer in layers
    ]
    return "\n\n".join(blocks) + "\n"


def load_model(path: str) -> NeuralNet:
    with open(path, "r", encoding="ascii") as handle:
        return parse_model(handle.read())


def save_model(layers: NeuralNet, path: str) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(format_model(layers))


def parse_vector_line(line: str) -> Vector:
    """Parses one comma-separated line of decimal literals."""
    values: Vector = []
    column = 1
    for token in line.split(","):
        try:
            values.append(parse_decimal(token))
        except ParseError as err:
            raise ParseError(f"column {column}: {err}") from None
        column += len(token) + 1
    return values


def dumps_bounds(bounds: LipschitzBounds, cfg: SqrtConfig | None = None) -> str:
    """Renders a bounds table: header lines, then one "i k num/den" line per
    unordered pair with i < k."""
    if cfg is None:
        cfg = DEFAULT_SQRT_CONFIG
    lines = [
        f"version {BOUNDS_FORMAT_VERSION}",
        f"dim {bounds.dim}",
        f"gram {bounds.gram_iterations}",
        f"sqrt {rational_str(cfg.err_tolerance)} {cfg.max_iterations} "
        f"{cfg.iterate_precision_places}",
        f"model {bounds.model_digest}",
    ]
    for i in range(bounds.dim):
        for k in range(i + 1, bounds.dim):
            lines.append(f"{i} {k} {rational_str(bounds.table[i][k])}")
    return "\n".join(lines) + "\n"


def _header_value(line: str, key: str) -> str:
    parts = line.split(maxsplit=1)
    if len(parts) != 2 or parts[0] != key:
        raise ParseError(f"expected header line {key!r}, found {line!r}")
    return parts[1]


def _header_int(line: str, key: str, minimum: int) -> int:
    raw = _header_value(line, key)
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"header {key!r} must be an integer, found {raw!r}") from None
    if value < minimum:
        raise ParseError(f"header {key!r} must be at least {minimum}, found {value}")
    return value


def loads_bounds(text: str, expected_digest: str | None = None) -> LipschitzBounds:
    """Parses a bounds table, mirroring each pair into both triangle halves.

    A digest mismatch against expected_digest is logged as a warning, not an
    error: the table is still internally consistent, just possibly stale for
    the model the caller has in hand.
    """
    lines = [line for line in text.split("\n") if line.strip() != ""]
    if len(lines) < 5:
        raise ParseError("bounds text is truncated: missing header lines")
    version = _header_value(lines[0], "version")
    if version != BOUNDS_FORMAT_VERSION:
        raise ParseError(f"unsupported bounds format version {version!r}")
    dim = _header_int(lines[1], "dim", 1)
    gram_n = _header_int(lines[2], "gram", 0)
    _header_value(lines[3], "sqrt")
    digest = _header_value(lines[4], "model")
    if expected_digest is not None and digest != expected_digest:
        logger.warning(
            "bounds digest %s.. does not match the model digest %s..; "
            "the table may have been computed from different weights",
            digest[:12],
            expected_digest[:12],
        )
    expected_pairs = dim * (dim - 1) // 2
    body = lines[5:]
    if len(body) != expected_pairs:
        raise ParseError(
            f"expected {expected_pairs} pair lines for dim {dim}, found {len(body)}"
        )
    table = [[Q(0)] * dim for _ in range(dim)]
    seen: set[tuple[int, int]] = set()
    for line in body:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"malformed pair line {line!r}")
        try:
            i, k = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed pair indices in line {line!r}") from None
        if not (0 <= i < k < dim):
            raise ParseError(f"pair indices out of range in line {line!r}")
        if (i, k) in seen:
            raise ParseError(f"duplicate pair ({i}, {k})")
        seen.add((i, k))
        value = parse_rational(parts[2])
        if value < 0:
            raise ParseError(f"negative bound in line {line!r}")
        table[i][k] = value
        table[k][i] = value
    return LipschitzBounds(table=table, gram_iterations=gram_n, model_digest=digest)


def bounds_sqrt_config(text: str) -> SqrtConfig:
    """Reads the sqrt header line back into a SqrtConfig.

    Used by callers that key cached tables by the full set of parameters that
    produced them; certification itself never needs it.
    """
    lines = [line for line in text.split("\n") if line.strip() != ""]
    if len(lines) < 5:
        raise ParseError("bounds text is truncated: missing header lines")
    raw = _header_value(lines[3], "sqrt")
    parts = raw.split()
    if len(parts) != 3:
        raise ParseError(f"malformed sqrt header {raw!r}")
    try:
        return SqrtConfig(
            err_tolerance=parse_rational(parts[0]),
            max_iterations=int(parts[1]),
            iterate_precision_places=int(parts[2]),
        )
    except (ValueError, ParseError) as err:
        raise ParseError(f"malformed sqrt header {raw!r}: {err}") from None


def save_bounds(bounds: LipschitzBounds, path: str, cfg: SqrtConfig | None = None) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(dumps_bounds(bounds, cfg))


def load_bounds(path: str, expected_digest: str | None = None) -> LipschitzBounds:
    with open(path, "r", encoding="ascii") as handle:
        return loads_bounds(handle.read(), expected_digest)
