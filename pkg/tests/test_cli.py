from __future__ import annotations

import csv
import io
import json
import sys

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from metastack.api import create_app
from metastack.cli import main

from .test_api import small_config


@pytest.fixture(scope="module")
def store(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli_store")
    config_path = root / "config.json"
    config_path.write_text(json.dumps(small_config(seed=23)), encoding="utf-8")
    runner = CliRunner()
    result = runner.invoke(main, ["run", "--config", str(config_path), "--out", str(root)])
    assert result.exit_code == 0, result.output
    experiment_id = result.output.strip().splitlines()[0]
    return root, config_path, experiment_id


class TestRun:
    def test_valid_config_exit_zero_and_id_on_stdout(self, store):
        _, _, experiment_id = store
        assert len(experiment_id) == 16

    def test_bad_config_exit_two(self, tmp_path):
        config_path = tmp_path / "bad.json"
        config_path.write_text('{"dataset": "x.csv"}', encoding="utf-8")
        result = CliRunner().invoke(
            main, ["run", "--config", str(config_path), "--out", str(tmp_path)]
        )
        assert result.exit_code == 2
        assert "error" in result.stderr

    def test_missing_config_file_exit_two(self, tmp_path):
        result = CliRunner().invoke(
            main, ["run", "--config", str(tmp_path / "none.json"), "--out", str(tmp_path)]
        )
        assert result.exit_code == 2

    def test_duplicate_without_overwrite_exit_three(self, store):
        root, config_path, _ = store
        result = CliRunner().invoke(main, ["run", "--config", str(config_path), "--out", str(root)])
        assert result.exit_code == 3

    def test_overwrite_flag_allows_rerun(self, store):
        root, config_path, experiment_id = store
        result = CliRunner().invoke(
            main, ["run", "--config", str(config_path), "--out", str(root), "--overwrite"]
        )
        assert result.exit_code == 0
        assert result.output.strip().splitlines()[0] == experiment_id


class TestRank:
    def test_json_matches_api_bytes(self, store):
        root, _, experiment_id = store
        cli = CliRunner().invoke(
            main,
            ["rank", experiment_id, "--weights", "accuracy:0.5,mcc:0.5",
             "--format", "json", "--root", str(root)],
        )
        assert cli.exit_code == 0
        with TestClient(create_app(data_root=root)) as client:
            api = client.get(
                f"/experiments/{experiment_id}/ranking", params={"weights": "accuracy:0.5,mcc:0.5"}
            )
        assert cli.output.strip().encode("utf-8") == api.content

    def test_weight_scaling_identical_output(self, store):
        root, _, experiment_id = store
        args = ["rank", experiment_id, "--format", "json", "--root", str(root)]
        one = CliRunner().invoke(main, args + ["--weights", "accuracy:1"])
        ten = CliRunner().invoke(main, args + ["--weights", "accuracy:10"])
        assert one.output == ten.output

    def test_unknown_id_exit_four(self, store):
        root, _, _ = store
        result = CliRunner().invoke(main, ["rank", "ffffffffffffffff", "--root", str(root)])
        assert result.exit_code == 4

    def test_csv_output_parses(self, store):
        root, _, experiment_id = store
        result = CliRunner().invoke(
            main, ["rank", experiment_id, "--format", "csv", "--root", str(root)]
        )
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0][:4] == ["rank", "candidate_id", "algorithm", "score"]
        assert len(rows) == 4  # header + 3 candidates

    def test_table_output_human_readable(self, store):
        root, _, experiment_id = store
        result = CliRunner().invoke(main, ["rank", experiment_id, "--root", str(root)])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 3


class TestCompareCommand:
    def candidate_ids(self, root, experiment_id):
        from metastack.store import load_experiment_by_id

        record = load_experiment_by_id(root, experiment_id)
        return [r.candidate.candidate_id for r in record.results]

    def test_self_compare_zero_deltas(self, store):
        root, _, experiment_id = store
        cid = self.candidate_ids(root, experiment_id)[0]
        result = CliRunner().invoke(
            main, ["compare", experiment_id, cid, cid, "--root", str(root)]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["agreement"]["only_a"] == 0
        assert all(e["delta"] == 0 for e in payload["per_instance"])

    def test_json_matches_api_bytes(self, store):
        root, _, experiment_id = store
        ids = self.candidate_ids(root, experiment_id)
        cli = CliRunner().invoke(
            main, ["compare", experiment_id, ids[0], ids[1], "--root", str(root)]
        )
        with TestClient(create_app(data_root=root)) as client:
            api = client.get(
                f"/experiments/{experiment_id}/compare", params={"a": ids[0], "b": ids[1]}
            )
        assert cli.output.strip().encode("utf-8") == api.content

    def test_unknown_candidate_exit_four(self, store):
        root, _, experiment_id = store
        result = CliRunner().invoke(
            main, ["compare", experiment_id, "nope", "nope", "--root", str(root)]
        )
        assert result.exit_code == 4

    def test_csv_format(self, store):
        root, _, experiment_id = store
        ids = self.candidate_ids(root, experiment_id)
        result = CliRunner().invoke(
            main, ["compare", experiment_id, ids[0], ids[1], "--format", "csv", "--root", str(root)]
        )
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0] == ["instance_id", "label", "pred_a", "pred_b", "maxproba_a", "maxproba_b", "delta"]
        assert len(rows) == 25  # header + 24 instances


class TestServeCommand:
    def test_serve_then_get_experiments_200(self, store):
        import socket
        import subprocess
        import time

        import httpx

        root, _, experiment_id = store
        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            port = probe.getsockname()[1]
        process = subprocess.Popen(
            [sys.executable, "-m", "metastack.cli", "serve",
             "--host", "127.0.0.1", "--port", str(port), "--root", str(root)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            deadline = time.time() + 15
            response = None
            while time.time() < deadline:
                try:
                    response = httpx.get(f"http://127.0.0.1:{port}/experiments", timeout=2)
                    break
                except httpx.TransportError:
                    time.sleep(0.2)
            assert response is not None, "server never came up"
            assert response.status_code == 200
            assert response.json()[0]["experiment_id"] == experiment_id
        finally:
            process.terminate()
            process.wait(timeout=10)


class TestProblematicCommand:
    def test_strict_threshold_on_clean_experiment_empty_exit_zero(self, store):
        root, _, experiment_id = store
        result = CliRunner().invoke(
            main,
            ["problematic", experiment_id, "--min-fraction-wrong", "1.0",
             "--confidence-ceiling", "0.01", "--root", str(root)],
        )
        assert result.exit_code == 0

    def test_json_format_lists_criterion(self, store):
        root, _, experiment_id = store
        result = CliRunner().invoke(
            main, ["problematic", experiment_id, "--format", "json", "--root", str(root)]
        )
        payload = json.loads(result.output)
        assert payload["criterion"] == {"min_fraction_wrong": 0.5, "confidence_ceiling": 0.55}
        assert "problematic" in payload
