"""HTTP service over the command layer.

Run with ``uvicorn sdchains.service:app``.  Every endpoint answers with a
:class:`~sdchains.api.Report`; malformed input is a 422 with the error text.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, api
from .errors import SdchainsError


class SessionRequest(BaseModel):
    session: dict[str, Any] = Field(default_factory=dict)


class ModuleRequest(SessionRequest):
    module: str
    bound: int | None = Field(default=None, ge=1)


class ChainRequest(SessionRequest):
    chain: str
    bound: int | None = Field(default=None, ge=1)
    suitable: bool = False
    trials: int | None = Field(default=None, ge=1)
    seed: int | None = None


class PresentResponse(BaseModel):
    report: api.Report
    presentation: dict[str, Any] | None = None


class QRequest(BaseModel):
    presentation: dict[str, Any]
    bound: int = Field(default=4, ge=1)
    window: int = Field(default=3, ge=2)
    trials: int = Field(default=64, ge=1)
    seed: int = 0


app = FastAPI(title="sdchains", version=__version__)


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (SdchainsError, KeyError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=f"{type(exc).__name__}: {exc}") from exc


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.post("/validate", response_model=api.Report)
def validate(req: SessionRequest) -> api.Report:
    return _guard(api.run_validate, req.session)


@app.post("/semidual", response_model=api.Report)
def semidual(req: ModuleRequest) -> api.Report:
    return _guard(api.run_semidual, req.session, req.module, req.bound)


@app.post("/chain", response_model=api.Report)
def chain(req: ChainRequest) -> api.Report:
    return _guard(api.run_chain, req.session, req.chain, req.bound, req.suitable, req.trials, req.seed)


@app.post("/present", response_model=PresentResponse)
def present(req: ChainRequest) -> PresentResponse:
    report, qdoc = _guard(api.run_present, req.session, req.chain, req.bound, req.trials, req.seed)
    return PresentResponse(report=report, presentation=qdoc)


@app.post("/verify-theorem", response_model=api.Report)
def verify_theorem(req: QRequest) -> api.Report:
    return _guard(api.run_verify_theorem, req.presentation, req.bound, req.window)


@app.post("/converse", response_model=api.Report)
def converse(req: QRequest) -> api.Report:
    return _guard(api.run_converse, req.presentation, req.bound, trials=req.trials, seed=req.seed)


@app.post("/tensor-lemmas", response_model=api.Report)
def tensor_lemmas(req: QRequest) -> api.Report:
    return _guard(api.run_tensor_lemmas, req.presentation, req.bound)
