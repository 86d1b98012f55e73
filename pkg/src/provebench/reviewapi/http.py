"""HTTP surface for the expert-review service.

All bodies carry a ``schema`` version so clients can detect drift; the
domain logic lives entirely in :mod:`.service`.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from .service import (
    SCHEMA_VERSION,
    DecisionConflictError,
    DecisionValidationError,
    ReviewError,
    ReviewService,
    UnknownItemError,
    UnknownReviewerError,
    decision_from_payload,
)

_ERROR_STATUS = (
    (UnknownReviewerError, 401),
    (UnknownItemError, 404),
    (DecisionConflictError, 409),
    (DecisionValidationError, 422),
)


def _http_error(exc: ReviewError) -> HTTPException:
    for cls, status in _ERROR_STATUS:
        if isinstance(exc, cls):
            return HTTPException(status_code=status, detail=str(exc))
    return HTTPException(status_code=500, detail=str(exc))


def create_app(
    service: ReviewService, static_dir: str | Path | None = None
) -> FastAPI:
    app = FastAPI(title="expert review queue", version=str(SCHEMA_VERSION))

    @app.get("/api/queue/next")
    def queue_next(reviewer: str = Query(...)):
        try:
            item = service.next_item(reviewer)
        except ReviewError as exc:
            raise _http_error(exc) from exc
        return {
            "schema": SCHEMA_VERSION,
            "item": item.to_payload() if item is not None else None,
        }

    @app.post("/api/decision")
    def post_decision(payload: dict = Body(...)):
        if payload.get("schema") != SCHEMA_VERSION:
            raise HTTPException(
                status_code=400,
                detail=f"unsupported schema {payload.get('schema')!r}; "
                f"this service speaks schema {SCHEMA_VERSION}",
            )
        try:
            decision = decision_from_payload(payload)
            acknowledgment = service.submit_decision(decision)
        except ReviewError as exc:
            raise _http_error(exc) from exc
        return {"schema": SCHEMA_VERSION, **acknowledgment}

    @app.get("/api/stats")
    def stats():
        return {"schema": SCHEMA_VERSION, **service.stats()}

    @app.get("/api/item/{item_id}")
    def get_item(item_id: str):
        try:
            detail = service.get_item(item_id)
        except ReviewError as exc:
            raise _http_error(exc) from exc
        return {"schema": SCHEMA_VERSION, **detail}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
