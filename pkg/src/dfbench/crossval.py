"""Cross-validated training and evaluation.

Each fold trains a fresh model on the out-of-fold rows only; any data-driven
statistic (SVM standardization in particular) therefore never sees test rows.
Predictions are pooled into a single confusion matrix across folds, and
per-class AUC is computed from the pooled out-of-fold scores.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .dataset import LabeledDataset
from .errors import DataError, TrainingError
from .folds import FoldPlan
from .metrics import ClassMetrics, ConfusionMatrix, accuracy_ci, metrics_from_cm, roc_auc


@dataclass(frozen=True)
class EvaluationReport:
    confusion: ConfusionMatrix
    fold_accuracies: tuple[float, ...]
    accuracy: float
    ci_halfwidth: float
    per_class: tuple[ClassMetrics, ...]
    per_class_auc: tuple[float, ...]
    class_names: tuple[str, ...]
    train_seconds: float
    predict_seconds: float


def fit_fold(data: LabeledDataset, plan: FoldPlan, fold: int, spec):
    """Train the classifier for one fold on its training rows only."""
    train = data.select_rows(plan.train_rows(fold))
    return spec.fit(train)


def run_cv(data: LabeledDataset, spec, plan: FoldPlan) -> EvaluationReport:
    if plan.assignment.shape[0] != data.n_samples:
        raise DataError(
            f"fold plan covers {plan.assignment.shape[0]} samples, dataset has {data.n_samples}"
        )
    k_classes = data.n_classes
    pooled_scores = np.full((data.n_samples, k_classes), np.nan)
    pooled_pred = np.full(data.n_samples, -1, dtype=np.int64)
    fold_accuracies = []
    train_seconds = 0.0
    predict_seconds = 0.0

    for fold in range(plan.k):
        test_rows = plan.test_rows(fold)
        if test_rows.size == 0:
            raise DataError(f"fold {fold} has no test samples")
        t0 = time.perf_counter()
        try:
            model = fit_fold(data, plan, fold, spec)
        except TrainingError as exc:
            raise TrainingError(f"fold {fold}: {exc}") from exc
        t1 = time.perf_counter()
        scores = model.scores_matrix(data.features.values[test_rows])
        t2 = time.perf_counter()
        train_seconds += t1 - t0
        predict_seconds += t2 - t1

        pred = np.argmax(scores, axis=1)
        pooled_scores[test_rows] = scores
        pooled_pred[test_rows] = pred
        truth = data.labels[test_rows]
        fold_accuracies.append(float(np.mean(pred == truth)))

    cm = ConfusionMatrix.from_predictions(data.labels, pooled_pred, data.class_names)
    per_class, accuracy = metrics_from_cm(cm)
    aucs = tuple(
        roc_auc(pooled_scores[:, c], data.labels == c) for c in range(k_classes)
    )
    return EvaluationReport(
        confusion=cm,
        fold_accuracies=tuple(fold_accuracies),
        accuracy=accuracy,
        ci_halfwidth=accuracy_ci(fold_accuracies),
        per_class=tuple(per_class),
        per_class_auc=aucs,
        class_names=data.class_names,
        train_seconds=train_seconds,
        predict_seconds=predict_seconds,
    )
