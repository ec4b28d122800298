"""Headless driver: run experiments, print rankings, export comparisons.

Exit codes are a stable contract: 0 ok, 2 config error, 3 duplicate experiment,
4 not found, 1 unexpected failure. ``--format json`` output goes through the
same payload builders as the HTTP API, byte for byte.
"""

from __future__ import annotations

import csv
import io
import sys
from pathlib import Path

import click

from .api import DEFAULT_HOST, DEFAULT_PORT, data_root_from_env, serve as serve_app
from .config import config_from_json
from .errors import (
    ConfigError,
    DuplicateExperiment,
    EmptyDataset,
    ExperimentNotFound,
    InvalidCriterion,
    InvalidDataset,
    InvalidMetricWeights,
    KTooLarge,
    KTooSmall,
    MetastackError,
    MissingTargetColumn,
    SingleClassDataset,
    UnknownCandidate,
    UnknownMetric,
)
from .metamodels import run_from_config
from .metrics import METRIC_NAMES, ProblematicCriterion
from .store import load_experiment_by_id
from .views import (
    compare_payload,
    dump_json,
    problematic_payload,
    ranking_payload,
    weights_for,
)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_DUPLICATE = 3
EXIT_NOT_FOUND = 4

_CONFIG_ERRORS = (
    ConfigError,
    InvalidMetricWeights,
    UnknownMetric,
    InvalidCriterion,
    MissingTargetColumn,
    SingleClassDataset,
    EmptyDataset,
    InvalidDataset,
    KTooLarge,
    KTooSmall,
)


def _exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, _CONFIG_ERRORS) or isinstance(exc, FileNotFoundError):
        return EXIT_CONFIG
    if isinstance(exc, DuplicateExperiment):
        return EXIT_DUPLICATE
    if isinstance(exc, (ExperimentNotFound, UnknownCandidate)):
        return EXIT_NOT_FOUND
    return EXIT_UNEXPECTED


def _run_guarded(fn):
    try:
        fn()
    except (MetastackError, FileNotFoundError) as exc:
        message = exc.message if isinstance(exc, MetastackError) else str(exc)
        click.echo(f"error: {message}", err=True)
        sys.exit(_exit_code_for(exc))


def _load_record(root: str, experiment_id: str):
    return load_experiment_by_id(Path(root), experiment_id)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


root_option = click.option(
    "--root",
    default=lambda: str(data_root_from_env()),
    show_default="METASTACK_DATA_ROOT or ./experiments",
    help="Experiment store directory.",
)


@click.group()
def main() -> None:
    """Stacking-ensemble workbench: run, rank, inspect, compare."""


@main.command("run")
@click.option("--config", "config_path", required=True, type=click.Path(), help="Experiment config JSON.")
@click.option("--out", "out_dir", default=lambda: str(data_root_from_env()),
              show_default="METASTACK_DATA_ROOT or ./experiments", help="Store directory.")
@click.option("--overwrite", is_flag=True, default=False, help="Replace an existing record with the same id.")
def run_cmd(config_path: str, out_dir: str, overwrite: bool) -> None:
    """Run the full experiment described by a config file."""

    def body() -> None:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError("missing_config", f"config file not found: {path}")
        config = config_from_json(path.read_text(encoding="utf-8"))
        record = run_from_config(config, out_dir=Path(out_dir), overwrite=overwrite)
        click.echo(record.experiment_id)
        if record.failures:
            for failure in record.failures:
                click.echo(f"candidate failed: {failure['candidate_id']}: {failure['message']}", err=True)

    _run_guarded(body)


@main.command("rank")
@click.argument("experiment_id")
@click.option("--weights", default=None, help='Metric weights, e.g. "accuracy:0.5,mcc:0.5".')
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table")
@root_option
def rank_cmd(experiment_id: str, weights: str | None, fmt: str, root: str) -> None:
    """Print the weighted metamodel ranking for an experiment."""

    def body() -> None:
        record = _load_record(root, experiment_id)
        payload = ranking_payload(record, weights_for(record, weights))
        if fmt == "json":
            click.echo(dump_json(payload))
            return
        if fmt == "csv":
            header = ["rank", "candidate_id", "algorithm", "score", *METRIC_NAMES]
            rows = []
            for position, entry in enumerate(payload["ranking"], start=1):
                metric_values = [
                    "" if entry["metrics"][name] is None else repr(entry["metrics"][name])
                    for name in METRIC_NAMES
                ]
                rows.append(
                    [position, entry["candidate_id"], entry["algorithm"], repr(entry["score"]), *metric_values]
                )
            click.echo(_csv_text(header, rows), nl=False)
            return
        for position, entry in enumerate(payload["ranking"], start=1):
            click.echo(f"{position:>3}  {entry['score']:.4f}  {entry['candidate_id']}")
        for failure in payload["failures"]:
            click.echo(f"  X  failed   {failure['candidate_id']} ({failure['message']})")

    _run_guarded(body)


@main.command("compare")
@click.argument("experiment_id")
@click.argument("candidate_a")
@click.argument("candidate_b")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@root_option
def compare_cmd(experiment_id: str, candidate_a: str, candidate_b: str, fmt: str, root: str) -> None:
    """Pairwise comparison report for two evaluated candidates."""

    def body() -> None:
        record = _load_record(root, experiment_id)
        payload = compare_payload(record, candidate_a, candidate_b)
        if fmt == "json":
            click.echo(dump_json(payload))
            return
        header = ["instance_id", "label", "pred_a", "pred_b", "maxproba_a", "maxproba_b", "delta"]
        rows = [
            [e["instance_id"], e["label"], e["pred_a"], e["pred_b"],
             repr(e["maxproba_a"]), repr(e["maxproba_b"]), repr(e["delta"])]
            for e in payload["per_instance"]
        ]
        click.echo(_csv_text(header, rows), nl=False)

    _run_guarded(body)


@main.command("problematic")
@click.argument("experiment_id")
@click.option("--min-fraction-wrong", "min_fraction_wrong", type=float, default=0.5, show_default=True)
@click.option("--confidence-ceiling", "confidence_ceiling", type=float, default=0.55, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@root_option
def problematic_cmd(
    experiment_id: str, min_fraction_wrong: float, confidence_ceiling: float, fmt: str, root: str
) -> None:
    """List instances most metamodels get wrong or predict with low confidence."""

    def body() -> None:
        record = _load_record(root, experiment_id)
        criterion = ProblematicCriterion(
            min_fraction_wrong=min_fraction_wrong, confidence_ceiling=confidence_ceiling
        )
        payload = problematic_payload(record, criterion)
        if fmt == "json":
            click.echo(dump_json(payload))
            return
        for entry in payload["problematic"]:
            click.echo(
                f"{entry['instance_id']}  wrong={entry['fraction_wrong']:.3f}"
                f"  mean_maxp={entry['mean_max_probability']:.3f}"
            )

    _run_guarded(body)


@main.command("serve")
@click.option("--host", default=DEFAULT_HOST, show_default=True)
@click.option("--port", default=DEFAULT_PORT, show_default=True, type=int)
@root_option
@click.option("--ui-dir", default=None, help="Directory with the built UI bundle (served at /ui).")
def serve_cmd(host: str, port: int, root: str, ui_dir: str | None) -> None:
    """Serve the HTTP API (and the UI bundle when present)."""
    serve_app(host=host, port=port, data_root=Path(root), ui_dir=ui_dir)


if __name__ == "__main__":
    main()
