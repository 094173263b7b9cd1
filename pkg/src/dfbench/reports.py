"""Report serialization: CSV tables and the plain-text summary.

Every writer here is deterministic for a given report; anything wall-clock
dependent stays out of these files and goes to the run log instead.
"""

from __future__ import annotations

import numpy as np

from .anova import AnovaResult
from .crossval import EvaluationReport
from .metrics import ConfusionMatrix
from .silhouette import SilhouetteReport
from .tsne import Embedding


def _pct(value) -> str:
    return "" if value is None else f"{100.0 * value:.1f}"


def write_metrics_csv(report: EvaluationReport, path) -> None:
    """Per-class metric table, percent to one decimal."""
    with open(path, "w", newline="\n") as fh:
        fh.write("class,precision,recall,specificity,f_score,auc\n")
        for metrics, auc in zip(report.per_class, report.per_class_auc):
            fh.write(
                ",".join(
                    [
                        metrics.class_name,
                        _pct(metrics.precision),
                        _pct(metrics.recall),
                        _pct(metrics.specificity),
                        _pct(metrics.f_score),
                        _pct(auc),
                    ]
                )
                + "\n"
            )


def write_confusion_csv(cm: ConfusionMatrix, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("true\\predicted," + ",".join(cm.class_names) + "\n")
        for name, row in zip(cm.class_names, cm.counts):
            fh.write(name + "," + ",".join(str(int(v)) for v in row) + "\n")


def write_folds_csv(fold_accuracies, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("fold,accuracy\n")
        for i, acc in enumerate(fold_accuracies):
            fh.write(f"{i},{acc:.6f}\n")


def write_bench_csv(rows, path) -> None:
    """Grid results: one row per (network, classifier) cell."""
    with open(path, "w", newline="\n") as fh:
        fh.write("network,classifier,accuracy_pct,ci95_pct,status\n")
        for row in rows:
            if row.get("error"):
                fh.write(f"{row['network']},{row['classifier']},,,{row['error']}\n")
            else:
                fh.write(
                    f"{row['network']},{row['classifier']},"
                    f"{100 * row['accuracy']:.2f},{100 * row['ci']:.2f},ok\n"
                )


def write_anova_csv(result: AnovaResult, factor_b_names, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("section,term,statistic,df1,df2,p_value,p_adjusted\n")
        fh.write(
            f"anova,network,{_stat(result.f_factor_a)},"
            f"{result.df_factor_a[0]},{result.df_factor_a[1]},"
            f"{result.p_factor_a:.6g},\n"
        )
        fh.write(
            f"anova,classifier,{_stat(result.f_factor_b)},"
            f"{result.df_factor_b[0]},{result.df_factor_b[1]},"
            f"{result.p_factor_b:.6g},\n"
        )
        for pair in result.pairwise_b:
            name = f"{factor_b_names[pair.level_a]} vs {factor_b_names[pair.level_b]}"
            fh.write(
                f"posthoc,{name},{_stat(pair.t_statistic)},,,"
                f"{pair.p_raw:.6g},{pair.p_adjusted:.6g}\n"
            )


def _stat(value: float) -> str:
    return f"{value:.6g}" if np.isfinite(value) else str(value)


def write_report_txt(report: EvaluationReport, path) -> None:
    lines = [
        f"overall accuracy: {100 * report.accuracy:.2f}% "
        f"+/- {100 * report.ci_halfwidth:.2f}% (95% CI over folds)",
        "fold accuracies: " + ", ".join(f"{a:.4f}" for a in report.fold_accuracies),
        "",
        f"{'class':<24}{'precision':>10}{'recall':>10}{'specif.':>10}{'f-score':>10}{'auc':>8}",
    ]
    for metrics, auc in zip(report.per_class, report.per_class_auc):
        def cell(v, width=10):
            return ("undef" if v is None else f"{100 * v:.1f}").rjust(width)

        lines.append(
            f"{metrics.class_name:<24}"
            f"{cell(metrics.precision)}{cell(metrics.recall)}"
            f"{cell(metrics.specificity)}{cell(metrics.f_score)}{cell(auc, 8)}"
        )
    lines.append("")
    lines.append("confusion matrix (rows true, columns predicted):")
    width = max(len(n) for n in report.class_names) + 2
    header = " " * width + "".join(n[:10].rjust(11) for n in report.class_names)
    lines.append(header)
    for name, row in zip(report.class_names, report.confusion.counts):
        lines.append(name.ljust(width) + "".join(str(int(v)).rjust(11) for v in row))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_embedding_csv(embedding: Embedding, sample_classes, path) -> None:
    dims = embedding.coordinates.shape[1]
    axes = ["x", "y", "z"][:dims]
    with open(path, "w", newline="\n") as fh:
        fh.write("sample_id,class_name," + ",".join(axes) + "\n")
        for sid, cls, coords in zip(
            embedding.sample_ids, sample_classes, embedding.coordinates
        ):
            fh.write(f"{sid},{cls}," + ",".join(f"{v:.6f}" for v in coords) + "\n")


def write_silhouette_csvs(
    report: SilhouetteReport, sample_ids, labels, class_path, sample_path
) -> None:
    with open(class_path, "w", newline="\n") as fh:
        fh.write("class,mean_silhouette,samples\n")
        for c, name in enumerate(report.class_names):
            count = int(np.sum(np.asarray(labels) == c))
            fh.write(f"{name},{report.class_means[c]:.6f},{count}\n")
    with open(sample_path, "w", newline="\n") as fh:
        fh.write("sample_id,class_name,intra_distance,nearest_other_distance,silhouette\n")
        for i, sid in enumerate(sample_ids):
            fh.write(
                f"{sid},{report.class_names[labels[i]]},"
                f"{report.intra[i]:.6f},{report.nearest_other[i]:.6f},"
                f"{report.values[i]:.6f}\n"
            )
