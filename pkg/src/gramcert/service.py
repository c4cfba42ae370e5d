"""HTTP certification service.

Wraps the library for long-lived, multi-client use: a client submits a model
once, the expensive bounds computation runs server-side and is cached under a
deterministic id, and subsequent calls certify output vectors against the
cached table cheaply. Tables can also be exported in the bounds file format
and previously exported files imported back.

All numeric payloads travel as strings (decimal literals in, exact "num/den"
out) so nothing is silently rounded at the JSON layer.
"""

from __future__ import annotations

import hashlib
import threading
import time
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .certify import certify
from .linalg import Vector
from .lipschitz import LipschitzBounds, gen_all_bounds
from .modelio import bounds_sqrt_config, dumps_bounds, loads_bounds, parse_model
from .nn import apply_nn, argmax, model_digest
from .rational import ParseError, Q, parse_decimal, rational_str
from .sqrt import DEFAULT_SQRT_CONFIG, SqrtConfig


class BoundsRequest(BaseModel):
    network: str = Field(
        description="model text: comma-separated decimal rows, blank line between layers"
    )
    gram_iterations: int = Field(ge=0)
    sqrt_err: Optional[str] = Field(
        default=None, description="sqrt tolerance as a decimal literal"
    )
    sqrt_max_iterations: Optional[int] = Field(default=None, ge=1)


class PairBound(BaseModel):
    i: int
    k: int
    value: str


class BoundsResponse(BaseModel):
    bounds_id: str
    digest: str
    dim: int
    gram_iterations: int
    elapsed_seconds: float
    pairs: list[PairBound]


class ImportRequest(BaseModel):
    text: str = Field(description="a previously exported bounds file")


class CertifyRequest(BaseModel):
    bounds_id: str
    epsilon: str
    outputs: list[list[str]]


class CertifyVerdict(BaseModel):
    certified: bool
    argmax_index: int
    failing_index: Optional[int] = None


class CertifyResponse(BaseModel):
    results: list[CertifyVerdict]


class ApplyRequest(BaseModel):
    network: str
    inputs: list[list[str]]


class ApplyOutput(BaseModel):
    values: list[str]
    argmax_index: int


class ApplyResponse(BaseModel):
    results: list[ApplyOutput]


def _table_id(digest: str, gram_n: int, cfg: SqrtConfig) -> str:
    material = (
        f"{digest}:{gram_n}:{cfg.err_tolerance}:"
        f"{cfg.max_iterations}:{cfg.iterate_precision_places}"
    )
    return hashlib.sha256(material.encode()).hexdigest()[:16]


class _BoundsStore:
    """In-memory cache of computed tables; the only state the service holds."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._tables: dict[str, tuple[LipschitzBounds, SqrtConfig]] = {}

    def put(self, bounds: LipschitzBounds, cfg: SqrtConfig) -> str:
        bounds_id = _table_id(bounds.model_digest, bounds.gram_iterations, cfg)
        with self._lock:
            self._tables[bounds_id] = (bounds, cfg)
        return bounds_id

    def get(self, bounds_id: str) -> tuple[LipschitzBounds, SqrtConfig]:
        with self._lock:
            entry = self._tables.get(bounds_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown bounds_id {bounds_id!r}")
        return entry

    def contains(self, bounds_id: str) -> bool:
        with self._lock:
            return bounds_id in self._tables


def _parse_network(text: str):
    try:
        return parse_model(text)
    except (ParseError, ValueError) as err:
        raise HTTPException(status_code=422, detail=f"network: {err}") from None


def _parse_rows(rows: list[list[str]], what: str) -> list[Vector]:
    try:
        return [[parse_decimal(token) for token in row] for row in rows]
    except ParseError as err:
        raise HTTPException(status_code=422, detail=f"{what}: {err}") from None


def _parse_epsilon(text: str) -> Q:
    try:
        epsilon = parse_decimal(text)
    except ParseError as err:
        raise HTTPException(status_code=422, detail=f"epsilon: {err}") from None
    if epsilon < 0:
        raise HTTPException(status_code=422, detail="epsilon must be nonnegative")
    return epsilon


def _bounds_response(
    bounds_id: str, bounds: LipschitzBounds, elapsed: float
) -> BoundsResponse:
    pairs = [
        PairBound(i=i, k=k, value=rational_str(bounds.table[i][k]))
        for i in range(bounds.dim)
        for k in range(i + 1, bounds.dim)
    ]
    return BoundsResponse(
        bounds_id=bounds_id,
        digest=bounds.model_digest,
        dim=bounds.dim,
        gram_iterations=bounds.gram_iterations,
        elapsed_seconds=elapsed,
        pairs=pairs,
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="gramcert",
        description=(
            "Sound l2 robustness certification for dense ReLU networks. "
            "Bounds tables are computed over exact rational arithmetic and "
            "cached; certification checks strict rational inequalities only."
        ),
        version="0.1.0",
    )
    store = _BoundsStore()

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/bounds", response_model=BoundsResponse)
    def compute_bounds(request: BoundsRequest) -> BoundsResponse:
        net = _parse_network(request.network)
        try:
            cfg = SqrtConfig(
                err_tolerance=(
                    parse_decimal(request.sqrt_err)
                    if request.sqrt_err is not None
                    else DEFAULT_SQRT_CONFIG.err_tolerance
                ),
                max_iterations=(
                    request.sqrt_max_iterations
                    if request.sqrt_max_iterations is not None
                    else DEFAULT_SQRT_CONFIG.max_iterations
                ),
            )
        except (ParseError, ValueError) as err:
            raise HTTPException(status_code=422, detail=f"sqrt config: {err}") from None
        digest = model_digest(net)
        bounds_id = _table_id(digest, request.gram_iterations, cfg)
        if store.contains(bounds_id):
            bounds, _ = store.get(bounds_id)
            return _bounds_response(bounds_id, bounds, 0.0)
        start = time.perf_counter()
        try:
            bounds = gen_all_bounds(net, request.gram_iterations, cfg)
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err)) from None
        elapsed = time.perf_counter() - start
        store.put(bounds, cfg)
        return _bounds_response(bounds_id, bounds, elapsed)

    @app.post("/bounds/import", response_model=BoundsResponse)
    def import_bounds(request: ImportRequest) -> BoundsResponse:
        try:
            bounds = loads_bounds(request.text)
            cfg = bounds_sqrt_config(request.text)
        except (ParseError, ValueError) as err:
            raise HTTPException(status_code=422, detail=str(err)) from None
        bounds_id = store.put(bounds, cfg)
        return _bounds_response(bounds_id, bounds, 0.0)

    @app.get("/bounds/{bounds_id}", response_class=PlainTextResponse)
    def export_bounds(bounds_id: str) -> str:
        bounds, cfg = store.get(bounds_id)
        return dumps_bounds(bounds, cfg)

    @app.post("/certify", response_model=CertifyResponse)
    def certify_outputs(request: CertifyRequest) -> CertifyResponse:
        bounds, _ = store.get(request.bounds_id)
        epsilon = _parse_epsilon(request.epsilon)
        outputs = _parse_rows(request.outputs, "outputs")
        results = []
        for row in outputs:
            try:
                verdict = certify(row, epsilon, bounds)
            except ValueError as err:
                raise HTTPException(status_code=422, detail=str(err)) from None
            results.append(
                CertifyVerdict(
                    certified=verdict.certified,
                    argmax_index=verdict.argmax_index,
                    failing_index=verdict.failing_index,
                )
            )
        return CertifyResponse(results=results)

    @app.post("/apply", response_model=ApplyResponse)
    def apply_network(request: ApplyRequest) -> ApplyResponse:
        net = _parse_network(request.network)
        inputs = _parse_rows(request.inputs, "inputs")
        results = []
        for row in inputs:
            try:
                out = apply_nn(net, row)
            except ValueError as err:
                raise HTTPException(status_code=422, detail=str(err)) from None
            results.append(
                ApplyOutput(
                    values=[rational_str(x) for x in out],
                    argmax_index=argmax(out),
                )
            )
        return ApplyResponse(results=results)

    return app


app = create_app()
