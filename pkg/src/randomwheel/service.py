"""HTTP facade over a loaded model: recommendations, factors, metadata.

The model is loaded once at startup and never mutated; handlers are pure,
and per-request randomness derives from (model seed, canonicalized
observation), so identical queries always get identical responses.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .dataset import Value
from .errors import DomainError, ModelFormatError, UnclassifiableError
from .explain import AttributionReport, aggregate_explanation
from .wheel import (
    RandomWheelModel,
    Recommendation,
    load_model,
    model_fingerprint,
    recommend,
)

APPROVE_TOKEN = "+"


@dataclass(frozen=True)
class ServiceConfig:
    model_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    max_body_bytes: int = 1_000_000
    timeout_seconds: float = 30.0
    cors_origins: tuple[str, ...] = ()


def approve_label(model: RandomWheelModel) -> str:
    """The class token rendered as approval: ``+`` when present, else the first."""
    return APPROVE_TOKEN if APPROVE_TOKEN in model.class_tokens else model.class_tokens[0]


def factors_listing(model: RandomWheelModel, top: int | None = None) -> list[dict[str, Any]]:
    """Ranked factor rows shared by the CLI dump and GET /v1/factors."""
    scores = model.factor_table.scores if top is None else model.factor_table.top(top)
    return [
        {
            "attributes": list(s.factor.names(model.schema)),
            "importance": s.importance,
            "default_ratio": s.default_ratio,
            "factor_ratio": s.factor_ratio,
        }
        for s in scores
    ]


def model_metadata(model: RandomWheelModel, version: str) -> dict[str, Any]:
    schema = []
    for attr in model.schema:
        entry: dict[str, Any] = {
            "name": attr.name,
            "kind": attr.kind,
            "position": attr.position,
        }
        if attr.kind == "categorical":
            entry["tokens"] = list(model.dataset.categorical_tokens(attr.position))
        schema.append(entry)
    cfg = model.config
    return {
        "version": version,
        "schema": schema,
        "class_tokens": list(model.class_tokens),
        "config": {
            "depth": cfg.depth,
            "noise_fraction": cfg.noise_fraction,
            "trials": cfg.trials,
            "importance_shuffles": cfg.importance_shuffles,
            "neighbor_window": cfg.neighbor_window,
            "seed": cfg.seed,
        },
        "factor_count": len(model.factor_table.scores),
        "discarded_factors": model.factor_table.discarded_count,
    }


def recommendation_payload(
    model: RandomWheelModel,
    version: str,
    rec: Recommendation,
    report: AttributionReport,
) -> dict[str, Any]:
    return {
        "label": rec.label,
        "approve": rec.label == approve_label(model),
        "confidence": rec.confidence,
        "velocities": rec.velocities,
        "attributions": [
            {"attribute": e.attribute, "percentage": e.percentage}
            for e in report.entries
        ],
        "no_signal": report.no_signal,
        "model_version": version,
        "trial_count": len(rec.trials),
    }


def parse_observation_body(
    model: RandomWheelModel, body: Any
) -> tuple[Value, ...] | JSONResponse:
    """Map an attribute-name -> value object onto a schema-ordered observation.

    null and absent attributes both mean missing.  Returns a 400 response on
    unknown names or type mismatches.
    """
    if not isinstance(body, dict):
        return _error(400, "body must be a JSON object of attribute values")
    by_name = {attr.name: attr for attr in model.schema}
    unknown = [k for k in body if k not in by_name]
    if unknown:
        return _error(400, f"unknown attributes: {', '.join(sorted(unknown))}")
    values: list[Value] = [None] * len(model.schema)
    for name, raw in body.items():
        attr = by_name[name]
        if raw is None:
            continue
        if attr.kind == "categorical":
            if not isinstance(raw, str):
                return _error(400, f"{name}: expected a string token, got {raw!r}")
            values[attr.position] = raw
        elif attr.kind == "integer":
            if isinstance(raw, bool) or not isinstance(raw, int):
                return _error(400, f"{name}: expected an integer, got {raw!r}")
            values[attr.position] = raw
        else:
            if isinstance(raw, bool) or not isinstance(raw, (int, float)):
                return _error(400, f"{name}: expected a number, got {raw!r}")
            values[attr.position] = float(raw)
    return tuple(values)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(
    model: RandomWheelModel | None,
    max_body_bytes: int = 1_000_000,
    cors_origins: Sequence[str] = (),
    timeout_seconds: float | None = None,
) -> FastAPI:
    """Build the app around an already-loaded (or absent, for probes) model."""
    app = FastAPI(title="randomwheel service")
    app.state.model = model
    app.state.version = model_fingerprint(model) if model is not None else None

    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def guard_request(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > max_body_bytes:
            return _error(413, "request body too large")
        if timeout_seconds is None:
            return await call_next(request)
        try:
            return await asyncio.wait_for(call_next(request), timeout_seconds)
        except asyncio.TimeoutError:
            return _error(504, "request timed out")

    @app.get("/healthz")
    async def healthz():
        if app.state.model is None:
            return _error(503, "model not loaded")
        return {"status": "ok"}

    @app.get("/v1/model")
    async def get_model():
        if app.state.model is None:
            return _error(503, "model not loaded")
        return model_metadata(app.state.model, app.state.version)

    @app.get("/v1/factors")
    async def get_factors(top: int | None = Query(default=None)):
        if app.state.model is None:
            return _error(503, "model not loaded")
        if top is not None and top < 1:
            return _error(400, "top must be >= 1")
        return {"factors": factors_listing(app.state.model, top)}

    @app.post("/v1/recommendations")
    async def post_recommendation(request: Request):
        loaded: RandomWheelModel = app.state.model
        if loaded is None:
            return _error(503, "model not loaded")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body is not valid JSON")
        observation = parse_observation_body(loaded, body)
        if isinstance(observation, JSONResponse):
            return observation
        try:
            rec = recommend(loaded, observation)
        except UnclassifiableError as exc:
            return _error(422, str(exc))
        except DomainError as exc:
            return _error(400, str(exc))
        report = aggregate_explanation(rec, loaded.schema)
        return recommendation_payload(loaded, app.state.version, rec, report)

    return app


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="randomwheel-service", description="Serve a trained model over HTTP"
    )
    parser.add_argument("--model", required=True, help="path to a model file")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--max-body", type=int, default=1_000_000)
    parser.add_argument("--timeout", type=float, default=30.0)
    parser.add_argument(
        "--cors", action="append", default=[], help="allowed origin (repeatable)"
    )
    args = parser.parse_args(argv)
    config = ServiceConfig(
        model_path=args.model,
        host=args.host,
        port=args.port,
        max_body_bytes=args.max_body,
        timeout_seconds=args.timeout,
        cors_origins=tuple(args.cors),
    )

    # Fail fast: a model that cannot load must never leave a live listener.
    try:
        model = load_model(config.model_path)
    except ModelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    import uvicorn

    app = create_app(
        model,
        max_body_bytes=config.max_body_bytes,
        cors_origins=config.cors_origins,
        timeout_seconds=config.timeout_seconds,
    )
    uvicorn.run(app, host=config.host, port=config.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
