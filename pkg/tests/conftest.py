from __future__ import annotations

import pytest

from metastack import BaseModelSpec, Dataset, stratified_kfold

from .helpers import separable_dataset


@pytest.fixture
def toy_dataset() -> Dataset:
    return separable_dataset(n=20, seed=3)


@pytest.fixture
def toy_folds(toy_dataset):
    return stratified_kfold(toy_dataset, k=4, seed=11)


@pytest.fixture
def small_specs() -> list[BaseModelSpec]:
    return [
        BaseModelSpec("lr", "logistic_regression", {"C": 1.0, "max_iter": 500}, seed=101),
        BaseModelSpec("dt", "decision_tree", {"max_depth": 3}, seed=102),
        BaseModelSpec("nb", "naive_bayes", {}, seed=103),
    ]
