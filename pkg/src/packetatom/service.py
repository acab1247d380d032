"""HTTP front end: one POST endpoint running a named scenario."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .config import load_config
from .core import ConfigError, SolverError
from .scenarios import SCENARIOS, run_scenario


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: str
    config_text: str | None = None
    overrides: list[str] = Field(default_factory=list)
    svg: bool = False


class RunResponse(BaseModel):
    scenario: str
    files: dict[str, str]
    summary: str
    headlines: list[dict]


def create_app() -> FastAPI:
    app = FastAPI(title="packetatom")

    @app.exception_handler(ConfigError)
    async def _config_error(request, exc):
        return JSONResponse(status_code=400,
                            content={"error_type": "config",
                                     "detail": str(exc)})

    @app.exception_handler(SolverError)
    async def _solver_error(request, exc):
        return JSONResponse(status_code=500,
                            content={"error_type": "solver",
                                     "detail": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.get("/scenarios")
    async def scenarios():
        return {name: {"description": desc, "columns": cols}
                for name, (_, desc, cols) in sorted(SCENARIOS.items())}

    @app.post("/run", response_model=RunResponse)
    def run(req: RunRequest) -> RunResponse:
        cfg = load_config(req.config_text, overrides=req.overrides)
        result = run_scenario(req.scenario, cfg, svg=req.svg)
        return RunResponse(scenario=result.scenario, files=result.files,
                           summary=result.summary,
                           headlines=result.headlines)

    return app


app = create_app()
