#!/usr/bin/env python3
"""End-to-end walkthrough on the bundled iris data.

Mirrors the interactive workflow headlessly: run the experiment, rank the
candidate metamodels, shift the metric weights, inspect problematic instances,
and compare the top two candidates head to head.

Usage: python3 scripts/run_demo.py [store_dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

from metastack import MetricWeights, compare_pair, config_from_json, rank_candidates, run_from_config
from metastack.metrics import ProblematicCriterion, find_problematic

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    store = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "experiments"
    config = config_from_json((ROOT / "configs" / "iris.json").read_text(encoding="utf-8"))

    print(f"running experiment into {store} ...")
    record = run_from_config(config, out_dir=store, overwrite=True)
    print(f"experiment {record.experiment_id}: {len(record.results)} candidates evaluated, "
          f"{len(record.failures)} failed\n")

    print("ranking under equal weights:")
    equal = rank_candidates(record.results, MetricWeights.uniform())
    for position, (candidate_id, score) in enumerate(equal, start=1):
        print(f"  {position:>2}. {score:.4f}  {candidate_id}")

    print("\nranking when only MCC and geometric mean matter:")
    skewed = rank_candidates(record.results, MetricWeights({"mcc": 1.0, "geometric_mean": 1.0}))
    for position, (candidate_id, score) in enumerate(skewed[:5], start=1):
        print(f"  {position:>2}. {score:.4f}  {candidate_id}")

    criterion = ProblematicCriterion(min_fraction_wrong=0.5, confidence_ceiling=0.55)
    problem = find_problematic(record.results, criterion, instance_ids=record.instance_ids)
    print(f"\nproblematic instances (>=50% of metamodels wrong, or mean confidence <=0.55): "
          f"{len(problem.instance_ids)}")
    for iid in problem.instance_ids[:10]:
        print(f"  {iid}")

    a_id, b_id = equal[0][0], equal[1][0]
    a = record.result_for(a_id)
    b = record.result_for(b_id)
    import numpy as np

    pc = compare_pair(a, b, np.asarray(record.labels), instance_ids=record.instance_ids)
    print(f"\nhead-to-head {a_id} vs {b_id}:")
    print(f"  both correct {pc.agreement.both_correct}, only first {pc.agreement.only_a}, "
          f"only second {pc.agreement.only_b}, both wrong {pc.agreement.both_wrong}")
    strongest = pc.per_instance[0]
    print(f"  largest confidence gap on {strongest.instance_id}: delta={strongest.delta:+.3f}")
    print(f"\ninspect interactively:  metastack serve --root {store}  ->  GET /experiments")


if __name__ == "__main__":
    main()
