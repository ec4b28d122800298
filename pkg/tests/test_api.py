from __future__ import annotations

import numpy as np
import pytest
from fastapi.testclient import TestClient

from metastack.api import create_app

from .schema_check import assert_valid


def inline_csv(n=24, seed=4) -> str:
    rng = np.random.default_rng(seed)
    half = n // 2
    x = np.concatenate([rng.uniform(0.5, 2.0, half), rng.uniform(-2.0, -0.5, n - half)])
    noise = rng.normal(size=n)
    lines = ["x,noise,y"]
    for xi, ni in zip(x, noise):
        lines.append(f"{xi:.6f},{ni:.6f},{'pos' if xi > 0 else 'neg'}")
    return "\n".join(lines) + "\n"


def small_config(seed=17) -> dict:
    return {
        "dataset_inline": inline_csv(),
        "name": "inline-toy",
        "target_column": "y",
        "k": 3,
        "seed": seed,
        "base_specs": [
            {"model_id": "lr", "algorithm": "logistic_regression",
             "hyperparameters": {"max_iter": 500}},
            {"model_id": "dt", "algorithm": "decision_tree", "hyperparameters": {"max_depth": 3}},
        ],
        "metamodel_grid": {
            "logistic_regression": [{"C": 1.0, "max_iter": 300}],
            "decision_tree": [{"max_depth": 2}],
            "naive_bayes": [{}],
        },
    }


@pytest.fixture(scope="module")
def client(tmp_path_factory):
    root = tmp_path_factory.mktemp("store")
    app = create_app(data_root=root)
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def experiment_id(client) -> str:
    response = client.post("/experiments", json=small_config())
    assert response.status_code == 200, response.text
    assert_valid(response.json(), "post_experiment")
    return response.json()["experiment_id"]


class TestPostExperiments:
    def test_malformed_json_is_400(self, client):
        response = client.post("/experiments", content=b"{oops", headers={"content-type": "application/json"})
        assert response.status_code == 400
        body = response.json()
        assert_valid(body, "error")
        assert body["code"] == "malformed_json"

    def test_missing_target_is_422(self, client):
        config = small_config()
        del config["target_column"]
        response = client.post("/experiments", json=config)
        assert response.status_code == 422
        body = response.json()
        assert_valid(body, "error")
        assert body["code"] == "missing_target"

    def test_duplicate_without_overwrite_is_409(self, client, experiment_id):
        response = client.post("/experiments", json=small_config())
        assert response.status_code == 409
        assert response.json()["code"] == "duplicate_experiment"

    def test_overwrite_query_allows_rerun(self, client, experiment_id):
        response = client.post("/experiments?overwrite=true", json=small_config())
        assert response.status_code == 200
        assert response.json()["experiment_id"] == experiment_id


class TestGetExperiments:
    def test_empty_store_lists_empty_array(self, tmp_path):
        app = create_app(data_root=tmp_path)
        with TestClient(app) as c:
            response = c.get("/experiments")
        assert response.status_code == 200
        assert response.json() == []

    def test_listing_contains_saved_experiment(self, client, experiment_id):
        response = client.get("/experiments")
        assert response.status_code == 200
        assert_valid(response.json(), "experiment_list")
        assert [s["experiment_id"] for s in response.json()] == [experiment_id]

    def test_unknown_id_is_404(self, client):
        response = client.get("/experiments/ffffffffffffffff")
        assert response.status_code == 404
        body = response.json()
        assert_valid(body, "error")
        assert body["code"] == "not_found"

    def test_full_record_passthrough(self, client, experiment_id):
        response = client.get(f"/experiments/{experiment_id}")
        assert response.status_code == 200
        record = response.json()
        assert_valid(record, "experiment")
        assert record["experiment_id"] == experiment_id
        assert len(record["results"]) == 3

    def test_two_gets_identical_bytes(self, client, experiment_id):
        first = client.get(f"/experiments/{experiment_id}")
        second = client.get(f"/experiments/{experiment_id}")
        assert first.content == second.content


class TestRanking:
    def test_default_weights_ranking(self, client, experiment_id):
        response = client.get(f"/experiments/{experiment_id}/ranking")
        assert response.status_code == 200
        body = response.json()
        assert_valid(body, "ranking")
        scores = [e["score"] for e in body["ranking"]]
        assert scores == sorted(scores, reverse=True)

    def test_single_metric_orders_by_that_metric(self, client, experiment_id):
        response = client.get(f"/experiments/{experiment_id}/ranking", params={"weights": "accuracy:1"})
        body = response.json()
        accs = [e["metrics"]["accuracy"] for e in body["ranking"]]
        assert accs == sorted(accs, reverse=True)
        assert [e["score"] for e in body["ranking"]] == accs

    def test_weight_scaling_gives_identical_body(self, client, experiment_id):
        one = client.get(f"/experiments/{experiment_id}/ranking", params={"weights": "accuracy:1"})
        ten = client.get(f"/experiments/{experiment_id}/ranking", params={"weights": "accuracy:10"})
        assert one.content == ten.content

    def test_unknown_metric_is_422(self, client, experiment_id):
        response = client.get(f"/experiments/{experiment_id}/ranking", params={"weights": "bogus:1"})
        assert response.status_code == 422
        body = response.json()
        assert_valid(body, "error")
        assert body["code"] == "unknown_metric"


class TestInstances:
    def test_all_instances_by_default(self, client, experiment_id):
        response = client.get(f"/experiments/{experiment_id}/instances")
        assert response.status_code == 200
        body = response.json()
        assert_valid(body, "instances")
        assert len(body["instances"]) == 24
        assert all(len(row["per_candidate"]) == 3 for row in body["instances"])

    def test_problematic_filter_subset_of_all(self, client, experiment_id):
        everything = client.get(f"/experiments/{experiment_id}/instances").json()
        problematic = client.get(
            f"/experiments/{experiment_id}/instances",
            params={"problematic": "true", "min_fraction_wrong": 0.5},
        ).json()
        assert_valid(problematic, "instances")
        assert {r["instance_id"] for r in problematic["instances"]} <= {
            r["instance_id"] for r in everything["instances"]
        }
        fractions = [r["fraction_wrong"] for r in problematic["instances"]]
        assert fractions == sorted(fractions, reverse=True)

    def test_thresholds_at_one_keep_only_universal_misses(self, client, experiment_id):
        response = client.get(
            f"/experiments/{experiment_id}/instances",
            params={"problematic": "true", "min_fraction_wrong": 1.0, "confidence_ceiling": 0.01},
        )
        body = response.json()
        for row in body["instances"]:
            assert row["fraction_wrong"] == 1.0

    def test_unknown_experiment_is_404(self, client):
        response = client.get("/experiments/0000000000000000/instances")
        assert response.status_code == 404

    def test_bad_criterion_is_422(self, client, experiment_id):
        response = client.get(
            f"/experiments/{experiment_id}/instances",
            params={"problematic": "true", "min_fraction_wrong": 0.0},
        )
        assert response.status_code == 422


class TestCompare:
    def candidate_ids(self, client, experiment_id):
        record = client.get(f"/experiments/{experiment_id}").json()
        return [r["candidate"]["candidate_id"] for r in record["results"]]

    def test_self_comparison_zero_deltas(self, client, experiment_id):
        cid = self.candidate_ids(client, experiment_id)[0]
        response = client.get(f"/experiments/{experiment_id}/compare", params={"a": cid, "b": cid})
        assert response.status_code == 200
        body = response.json()
        assert_valid(body, "compare")
        assert body["agreement"]["only_a"] == 0
        assert body["agreement"]["only_b"] == 0
        assert all(e["delta"] == 0 for e in body["per_instance"])
        assert body["disagreements"] == []

    def test_valid_pair_conserves_counts(self, client, experiment_id):
        ids = self.candidate_ids(client, experiment_id)
        response = client.get(
            f"/experiments/{experiment_id}/compare", params={"a": ids[0], "b": ids[1]}
        )
        body = response.json()
        assert_valid(body, "compare")
        total = sum(body["agreement"].values())
        assert total == 24

    def test_unknown_candidate_is_404(self, client, experiment_id):
        response = client.get(
            f"/experiments/{experiment_id}/compare", params={"a": "nope", "b": "nope"}
        )
        assert response.status_code == 404
        body = response.json()
        assert_valid(body, "error")
        assert body["code"] == "unknown_candidate"
