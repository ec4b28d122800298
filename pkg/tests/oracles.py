"""Independent brute-force oracles for the test suite.

These deliberately take different computational routes than the package:

  - confusion counts via a dict of (true, pred) pairs;
  - per-class tp/fp/fn counted one-vs-rest by looping instances;
  - ROC AUC by counting concordant positive/negative pairs (ties count 0.5)
    instead of a rank statistic;
  - MCC as the correlation of one-hot indicator matrices (covariance form)
    instead of contingency-table algebra;
  - pairwise agreement by enumerating the four correctness combinations.

They are written for clarity on small inputs, not speed, and must never import
from metastack's metric internals.
"""

from __future__ import annotations

import math


def oracle_confusion(y_true, y_pred, n_classes):
    counts: dict[tuple[int, int], int] = {}
    for t, p in zip(y_true, y_pred):
        counts[(t, p)] = counts.get((t, p), 0) + 1
    return counts


def oracle_auc_macro(y_true, proba) -> float | None:
    """Macro one-vs-rest AUC by counting concordant pairs; None when y_true is
    single-class. Depends only on (y_true, proba), so exhaustive sweeps may
    cache it across y_pred patterns."""
    n = len(y_true)
    present = sorted(set(y_true))
    if len(present) < 2:
        return None
    per_class = []
    for c in present:
        pos = [proba[i][c] for i in range(n) if y_true[i] == c]
        neg = [proba[i][c] for i in range(n) if y_true[i] != c]
        wins = 0.0
        for sp in pos:
            for sn in neg:
                if sp > sn:
                    wins += 1.0
                elif sp == sn:
                    wins += 0.5
        per_class.append(wins / (len(pos) * len(neg)))
    return sum(per_class) / len(per_class)


def oracle_mcc_covariance(y_true, y_pred, n_classes) -> float | None:
    """MCC as the correlation of one-hot indicator matrices (covariance form)."""
    n = len(y_true)
    if len(set(y_true)) < 2:
        return None
    t_mean = [sum(1 for t in y_true if t == c) / n for c in range(n_classes)]
    p_mean = [sum(1 for p in y_pred if p == c) / n for c in range(n_classes)]
    cov_tp = cov_tt = cov_pp = 0.0
    for t, p in zip(y_true, y_pred):
        for c in range(n_classes):
            t_ind = (1.0 if t == c else 0.0) - t_mean[c]
            p_ind = (1.0 if p == c else 0.0) - p_mean[c]
            cov_tp += t_ind * p_ind
            cov_tt += t_ind * t_ind
            cov_pp += p_ind * p_ind
    denominator = math.sqrt(cov_tt) * math.sqrt(cov_pp)
    return cov_tp / denominator if denominator > 0 else 0.0


_UNSET = object()


def oracle_metrics(y_true, y_pred, proba, auc=_UNSET) -> dict:
    """All eight metrics under the documented conventions; None when undefined.

    ``auc`` lets exhaustive sweeps pass a value already computed by
    :func:`oracle_auc_macro` for this (y_true, proba) pair. Inputs are treated
    read-only.
    """
    n = len(y_true)
    n_classes = len(proba[0])
    counts = oracle_confusion(y_true, y_pred, n_classes)

    recalls, precisions, f1s = [], [], []
    for c in range(n_classes):
        tp = counts.get((c, c), 0)
        fn = sum(counts.get((c, p), 0) for p in range(n_classes) if p != c)
        fp = sum(counts.get((t, c), 0) for t in range(n_classes) if t != c)
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        recalls.append(recall)
        precisions.append(precision)
        f1s.append(f1)

    present = sorted({t for t in y_true})
    accuracy = sum(1 for t, p in zip(y_true, y_pred) if t == p) / n
    balanced_accuracy = sum(recalls[c] for c in present) / len(present)

    product = 1.0
    for r in recalls:
        product *= r
    geometric_mean = product ** (1.0 / n_classes)

    roc_auc = oracle_auc_macro(y_true, proba) if auc is _UNSET else auc
    mcc = oracle_mcc_covariance(y_true, y_pred, n_classes)

    return {
        "accuracy": accuracy,
        "balanced_accuracy": balanced_accuracy,
        "precision_macro": sum(precisions) / n_classes,
        "recall_macro": sum(recalls) / n_classes,
        "f1_macro": sum(f1s) / n_classes,
        "roc_auc": roc_auc,
        "geometric_mean": geometric_mean,
        "mcc": mcc,
    }


def oracle_binary_mcc(tp: int, fn: int, fp: int, tn: int) -> float:
    """Direct evaluation of the 2x2 MCC formula."""
    denominator = math.sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn))
    if denominator == 0:
        return 0.0
    return (tp * tn - fp * fn) / denominator


def oracle_agreement(correct_a, correct_b) -> dict[str, int]:
    """Count the four correctness combinations by direct enumeration."""
    out = {"both_correct": 0, "only_a": 0, "only_b": 0, "both_wrong": 0}
    for ca, cb in zip(correct_a, correct_b):
        if ca and cb:
            out["both_correct"] += 1
        elif ca:
            out["only_a"] += 1
        elif cb:
            out["only_b"] += 1
        else:
            out["both_wrong"] += 1
    return out


def oracle_stump_error(features, labels) -> int:
    """Best achievable misclassifications of a single threshold split.

    Exhaustively tries every (column, threshold, side-labeling); used to verify
    that a constructed meta-feature column is perfectly informative before
    asserting a tree metamodel reaches accuracy 1.0 on it.
    """
    n = len(labels)
    best = n
    n_columns = len(features[0])
    for col in range(n_columns):
        values = sorted({row[col] for row in features})
        cuts = [(a + b) / 2.0 for a, b in zip(values, values[1:])]
        for cut in cuts:
            left = [labels[i] for i in range(n) if features[i][col] <= cut]
            right = [labels[i] for i in range(n) if features[i][col] > cut]
            for side_labels in ((0, 1), (1, 0)):
                errors = sum(1 for v in left if v != side_labels[0])
                errors += sum(1 for v in right if v != side_labels[1])
                best = min(best, errors)
    return best
