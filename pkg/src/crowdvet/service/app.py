"""HTTP service exposing simulation runs, replays, comparisons, and validation.

The service is stateless: each request carries everything needed (config
and/or event log), runs in process, and returns the full result. The CLI is
a thin client over these endpoints.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..config import config_from_dict
from ..core.errors import ConfigError, CorruptEvent, CrowdvetError, OutOfOrderTick
from ..core.events import EventLog
from ..core.state import replay
from ..gamification.elements import ELEMENT_TABLE
from ..harness.compare import compare_processes
from ..harness.metrics import compute_metrics
from ..sim.runner import run_simulation
from .schemas import (
    CompareRequest,
    CompareResponse,
    ElementRow,
    ElementsResponse,
    HealthResponse,
    ReplayRequest,
    ReplayResponse,
    RunRequest,
    RunResponse,
    ValidateRequest,
    ValidateResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="crowdvet",
        version=__version__,
        description=(
            "Protocol engine and incentive simulator for crowd-vetted "
            "bug bounty programs."
        ),
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/config/validate", response_model=ValidateResponse)
    def validate_config(request: ValidateRequest) -> ValidateResponse:
        try:
            config = config_from_dict(request.config)
        except ConfigError as exc:
            return ValidateResponse(valid=False, errors=exc.errors)
        return ValidateResponse(valid=True, config=config.canonical_dict())

    @app.post("/runs", response_model=RunResponse)
    def execute_run(request: RunRequest) -> RunResponse:
        try:
            config = config_from_dict(request.config)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=exc.errors) from exc
        try:
            result = run_simulation(config, request.seed)
            metrics = compute_metrics(result.log)
        except CrowdvetError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return RunResponse(
            seed=request.seed,
            metrics=metrics.to_dict(),
            event_log=result.log.to_lines(),
            state_digest=result.world.digest(),
            elapsed_seconds=result.elapsed_seconds,
        )

    @app.post("/replay", response_model=ReplayResponse)
    def replay_log(request: ReplayRequest) -> ReplayResponse:
        try:
            log = EventLog.from_lines(request.event_log)
            world = replay(log)
            metrics = compute_metrics(log)
        except (CorruptEvent, OutOfOrderTick) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except CrowdvetError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return ReplayResponse(
            metrics=metrics.to_dict(),
            state_digest=world.digest(),
            final_tick=world.tick,
        )

    @app.post("/compare", response_model=CompareResponse)
    def compare(request: CompareRequest) -> CompareResponse:
        try:
            config = config_from_dict(request.config)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=exc.errors) from exc
        if not request.variants or not request.seeds:
            raise HTTPException(
                status_code=400, detail="variants and seeds must be non-empty"
            )
        try:
            report = compare_processes(config, request.variants, request.seeds)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except CrowdvetError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return CompareResponse(report=report.to_dict())

    @app.get("/gamification/elements", response_model=ElementsResponse)
    def elements() -> ElementsResponse:
        rows = [
            ElementRow(
                element=info.element.value,
                user_type=info.user_type.value,
                motivation=info.motivation,
                issues_addressed=sorted(info.issues_addressed),
            )
            for info in ELEMENT_TABLE.values()
        ]
        return ElementsResponse(rows=rows)

    return app


app = create_app()
