"""HTTP service exposing experiments to the UI and other clients.

Endpoints (all JSON; see docs/schema.md and docs/schemas/ for response schemas):

    POST /experiments                      run an experiment from a config body
    GET  /experiments                      list stored experiment summaries
    GET  /experiments/{id}                 full experiment record
    GET  /experiments/{id}/ranking         weighted ranking (?weights=acc:1,mcc:2)
    GET  /experiments/{id}/instances       instance table (?problematic=true&...)
    GET  /experiments/{id}/compare         pairwise comparison (?a=...&b=...)

Every error body has the shape {"status", "code", "message"}. The store
directory comes from METASTACK_DATA_ROOT (default ./experiments). When a built
UI bundle exists it is served under /ui.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .config import config_from_dict
from .errors import (
    ConfigError,
    DuplicateExperiment,
    EmptyDataset,
    ExperimentNotFound,
    InvalidCriterion,
    InvalidMetricWeights,
    MetastackError,
    MissingTargetColumn,
    ModelTrainingFailure,
    SchemaValidationError,
    SingleClassDataset,
    UnknownCandidate,
    UnknownMetric,
)
from .metamodels import run_from_config
from .metrics import ProblematicCriterion
from .store import list_experiments, load_experiment_by_id
from .views import (
    compare_payload,
    dump_json_bytes,
    experiment_payload,
    instances_payload,
    listing_payload,
    ranking_payload,
    weights_for,
)

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8765

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (ExperimentNotFound, 404),
    (UnknownCandidate, 404),
    (DuplicateExperiment, 409),
    (ConfigError, 422),
    (UnknownMetric, 422),
    (InvalidMetricWeights, 422),
    (InvalidCriterion, 422),
    (MissingTargetColumn, 422),
    (SingleClassDataset, 422),
    (EmptyDataset, 422),
    (SchemaValidationError, 500),
    (ModelTrainingFailure, 500),
]


def _status_for(exc: MetastackError) -> int:
    for cls, status in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            return status
    return 500


def _json_response(payload, status: int = 200) -> Response:
    return Response(content=dump_json_bytes(payload), status_code=status, media_type="application/json")


def _error_response(status: int, code: str, message: str) -> Response:
    return _json_response({"status": status, "code": code, "message": message}, status=status)


def data_root_from_env() -> Path:
    return Path(os.environ.get("METASTACK_DATA_ROOT", "experiments"))


def create_app(data_root: str | Path | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    root = Path(data_root) if data_root is not None else data_root_from_env()
    app = FastAPI(title="metastack", docs_url=None, redoc_url=None)

    origins = os.environ.get("METASTACK_CORS_ORIGINS", "*").split(",")
    app.add_middleware(
        CORSMiddleware, allow_origins=origins, allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(MetastackError)
    async def handle_metastack_error(_request: Request, exc: MetastackError) -> Response:
        return _error_response(_status_for(exc), exc.code, exc.message)

    @app.exception_handler(FileNotFoundError)
    async def handle_missing_file(_request: Request, exc: FileNotFoundError) -> Response:
        return _error_response(422, "dataset_not_found", str(exc))

    @app.post("/experiments")
    async def post_experiment(request: Request) -> Response:
        raw = await request.body()
        try:
            parsed = json.loads(raw)
        except json.JSONDecodeError as exc:
            return _error_response(400, "malformed_json", f"request body is not valid JSON: {exc}")
        overwrite = request.query_params.get("overwrite", "false").lower() == "true"
        config = config_from_dict(parsed)
        record = run_from_config(config, out_dir=root, overwrite=overwrite)
        return _json_response(
            {"experiment_id": record.experiment_id, "n_results": len(record.results),
             "n_failures": len(record.failures)}
        )

    @app.get("/experiments")
    async def get_experiments() -> Response:
        return _json_response(listing_payload(list_experiments(root)))

    @app.get("/experiments/{experiment_id}")
    async def get_experiment(experiment_id: str) -> Response:
        record = load_experiment_by_id(root, experiment_id)
        return _json_response(experiment_payload(record))

    @app.get("/experiments/{experiment_id}/ranking")
    async def get_ranking(experiment_id: str, weights: str | None = None) -> Response:
        record = load_experiment_by_id(root, experiment_id)
        return _json_response(ranking_payload(record, weights_for(record, weights)))

    @app.get("/experiments/{experiment_id}/instances")
    async def get_instances(
        experiment_id: str,
        problematic: bool = False,
        min_fraction_wrong: float | None = None,
        confidence_ceiling: float | None = None,
    ) -> Response:
        record = load_experiment_by_id(root, experiment_id)
        criterion = ProblematicCriterion(
            min_fraction_wrong=min_fraction_wrong if min_fraction_wrong is not None else 0.5,
            confidence_ceiling=confidence_ceiling if confidence_ceiling is not None else 0.55,
        )
        return _json_response(instances_payload(record, problematic=problematic, criterion=criterion))

    @app.get("/experiments/{experiment_id}/compare")
    async def get_compare(experiment_id: str, a: str, b: str) -> Response:
        record = load_experiment_by_id(root, experiment_id)
        return _json_response(compare_payload(record, a, b))

    ui_path = Path(ui_dir) if ui_dir is not None else Path(os.environ.get("METASTACK_UI_DIR", "frontend/dist"))
    if ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_path, html=True), name="ui")

    return app


def serve(host: str = DEFAULT_HOST, port: int = DEFAULT_PORT, data_root: str | Path | None = None,
          ui_dir: str | Path | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(data_root=data_root, ui_dir=ui_dir), host=host, port=port)
