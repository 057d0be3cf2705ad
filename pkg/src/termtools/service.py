"""HTTP service for the validation workflow.

Wraps a Store (and optionally an engine) behind a small JSON API used by
both the command line and the browser console:

    GET  /api/items?kind=&status=      review queue
    POST /api/items/{id}/decision      record an expert verdict
    POST /api/iterate                  run one engine turn
    GET  /api/status                   iteration counter and item counts
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import BusyError, ConfigError, ConflictError, NotFoundError
from .valstore import Store, ValidationItem


class ItemOut(BaseModel):
    id: str
    kind: str
    status: str
    score: float
    payload: dict
    decided_at: Optional[str] = None
    decided_by: Optional[str] = None

    @classmethod
    def from_item(cls, item: ValidationItem) -> "ItemOut":
        return cls(**item.to_dict())


class DecisionIn(BaseModel):
    verdict: Literal["accepted", "rejected"]
    who: str


class IterateOut(BaseModel):
    new_candidates: int
    iteration: int


class StatusOut(BaseModel):
    iteration: int
    items: dict[str, int]
    engine: Optional[str] = None


def create_app(store: Store, engine=None, ui_dir=None) -> FastAPI:
    app = FastAPI(title="term validation console", version="0.1.0")

    @app.get("/api/items", response_model=list[ItemOut])
    def list_items(kind: Optional[Literal["term", "pattern", "pair"]] = None,
                   status: Optional[Literal["pending", "accepted",
                                            "rejected"]] = None):
        return [ItemOut.from_item(i) for i in store.items(kind, status)]

    @app.post("/api/items/{item_id}/decision", response_model=ItemOut)
    def decide(item_id: str, decision: DecisionIn):
        try:
            item = store.decide(item_id, decision.verdict, decision.who)
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return ItemOut.from_item(item)

    @app.post("/api/iterate", response_model=IterateOut)
    def iterate():
        try:
            summary = store.run_iteration(engine)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except BusyError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return IterateOut(**summary)

    @app.get("/api/status", response_model=StatusOut)
    def status():
        return StatusOut(iteration=store.iteration, items=store.counts(),
                         engine=getattr(engine, "name", None))

    if ui_dir is not None:
        ui_path = Path(ui_dir)
        if not ui_path.is_dir():
            raise ConfigError(f"console asset directory not found: {ui_path}")
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="console")

    return app
