"""Command-line front end.

Subcommands: bench (grid of networks x classifiers), eval (one pipeline),
embed (t-SNE export), silhouette (separability export), check (manifest
validation). Exit codes: 0 success, 1 usage, 2 data validation, 3 numerical
failure. All outputs except run.log are byte-identical across equal-seed
re-runs; wall-clock timings only ever appear in run.log.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from pathlib import Path

import numpy as np

from .anova import two_factor_anova
from .config import RunConfig, build_classifier, classifier_label
from .crossval import run_cv
from .dataset import build_dataset
from .errors import DataError, DfbenchError, TrainingError, UsageError
from .features import load_feature_matrix
from .folds import stratified_folds
from .manifest import load_manifest, validate_manifest
from .model_io import save_model
from .reports import (
    write_anova_csv,
    write_bench_csv,
    write_confusion_csv,
    write_embedding_csv,
    write_folds_csv,
    write_metrics_csv,
    write_report_txt,
    write_silhouette_csvs,
)
from .silhouette import silhouette
from .svgplot import scatter_svg
from .tsne import TsneSpec, tsne

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class RunLog:
    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "w")

    def line(self, message: str) -> None:
        stamp = datetime.now().isoformat(timespec="seconds")
        self._fh.write(f"{stamp} | {message}\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()


def _load_labeled(config: RunConfig, feature_path: str):
    features = load_feature_matrix(feature_path)
    if config.manifest is None:
        raise UsageError("a manifest path is required")
    manifest = load_manifest(config.manifest)
    data = build_dataset(features, manifest)
    if config.classes is not None:
        if not config.classes:
            raise UsageError("class filter is empty")
        data = data.subset_classes(config.classes)
    return data


def _bench_cell(payload: dict) -> dict:
    """One grid cell, safe to run in a worker process."""
    result = {
        "network": payload["network"],
        "classifier": payload["classifier_label"],
    }
    try:
        config = RunConfig(**payload["config"])
        t0 = time.perf_counter()
        data = _load_labeled(config, payload["feature_path"])
        load_seconds = time.perf_counter() - t0
        spec = build_classifier(payload["classifier"], config.seed)
        plan = stratified_folds(data.labels, config.folds, config.seed)
        report = run_cv(data, spec, plan)
        result.update(
            accuracy=report.accuracy,
            ci=report.ci_halfwidth,
            fold_accuracies=list(report.fold_accuracies),
            load_seconds=load_seconds,
            train_seconds=report.train_seconds,
            predict_seconds=report.predict_seconds,
        )
    except (DfbenchError, LookupError, OSError) as exc:
        result["error"] = str(exc)
    return result


def cmd_bench(config: RunConfig, log: RunLog) -> int:
    if not config.features:
        raise UsageError("bench needs at least one feature file")
    if not config.classifiers:
        raise UsageError("bench needs at least one classifier spec")
    networks = list(config.features)
    labels = [classifier_label(c) for c in config.classifiers]
    cells = []
    config_dict = {
        "manifest": config.manifest,
        "classes": config.classes,
        "folds": config.folds,
        "seed": config.seed,
    }
    for net in networks:
        for clf in config.classifiers:
            cells.append(
                {
                    "network": net,
                    "feature_path": config.features[net],
                    "classifier": clf,
                    "classifier_label": classifier_label(clf),
                    "config": config_dict,
                }
            )
    jobs = config.jobs or os.cpu_count() or 1
    log.line(f"benchmark grid: {len(networks)} networks x {len(labels)} classifiers, jobs={jobs}")
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_bench_cell, cells))
    else:
        results = [_bench_cell(cell) for cell in cells]

    out = Path(config.out)
    for row in results:
        if row.get("error"):
            message = f"cell {row['network']}/{row['classifier']} skipped: {row['error']}"
            log.line(message)
            print(f"warning: {message}", file=sys.stderr)
        else:
            log.line(
                f"cell {row['network']}/{row['classifier']} "
                f"accuracy={row['accuracy']:.4f} ci={row['ci']:.4f} "
                f"load={row['load_seconds']:.2f}s train={row['train_seconds']:.2f}s "
                f"predict={row['predict_seconds']:.2f}s"
            )
    write_bench_csv(results, out / "report.csv")

    ok = [r for r in results if not r.get("error")]
    grid_complete = len(ok) == len(cells)
    if grid_complete and len(networks) >= 2 and len(labels) >= 2:
        table = np.array(
            [
                [
                    next(
                        r["fold_accuracies"]
                        for r in ok
                        if r["network"] == net and r["classifier"] == lab
                    )
                    for lab in labels
                ]
                for net in networks
            ]
        )
        result = two_factor_anova(table)
        write_anova_csv(result, labels, out / "anova.csv")
        log.line(
            f"anova: network F={result.f_factor_a:.4g} p={result.p_factor_a:.4g}; "
            f"classifier F={result.f_factor_b:.4g} p={result.p_factor_b:.4g}"
        )
    else:
        reason = "incomplete grid" if not grid_complete else "needs >= 2 levels per factor"
        log.line(f"anova skipped: {reason}")
        print(f"warning: anova skipped ({reason})", file=sys.stderr)

    for row in results:
        if row.get("error"):
            print(f"{row['network']:24} {row['classifier']:24} FAILED")
        else:
            print(
                f"{row['network']:24} {row['classifier']:24} "
                f"{100 * row['accuracy']:6.2f}% +/- {100 * row['ci']:.2f}%"
            )
    if not ok:
        raise DataError("all benchmark cells failed")
    return EXIT_OK


def cmd_eval(config: RunConfig, log: RunLog) -> int:
    network, feature_path = config.single_feature_file()
    classifier = config.single_classifier()
    data = _load_labeled(config, feature_path)
    spec = build_classifier(classifier, config.seed)
    plan = stratified_folds(data.labels, config.folds, config.seed)
    log.line(
        f"eval {network}/{classifier_label(classifier)} "
        f"on {data.n_samples} samples, {data.n_classes} classes, {config.folds} folds"
    )
    report = run_cv(data, spec, plan)
    out = Path(config.out)
    write_metrics_csv(report, out / "report.csv")
    write_confusion_csv(report.confusion, out / "confusion.csv")
    write_folds_csv(report.fold_accuracies, out / "folds.csv")
    write_report_txt(report, out / "report.txt")
    final_model = spec.fit(data)
    save_model(final_model, out / "model.bin")
    log.line(
        f"accuracy={report.accuracy:.4f} ci={report.ci_halfwidth:.4f} "
        f"train={report.train_seconds:.2f}s predict={report.predict_seconds:.2f}s"
    )
    print(
        f"accuracy {100 * report.accuracy:.2f}% +/- {100 * report.ci_halfwidth:.2f}% "
        f"({data.n_classes} classes, {data.n_samples} samples)"
    )
    return EXIT_OK


def _tsne_spec(config: RunConfig) -> TsneSpec:
    options = dict(config.tsne)
    options.setdefault("seed", config.seed)
    try:
        return TsneSpec(**options)
    except TypeError as exc:
        raise UsageError(f"bad tsne options: {exc}") from exc


def cmd_embed(config: RunConfig, log: RunLog) -> int:
    network, feature_path = config.single_feature_file()
    data = _load_labeled(config, feature_path)
    spec = _tsne_spec(config)
    log.line(
        f"embed {network}: {data.n_samples} samples to {spec.output_dims}-D, "
        f"perplexity {spec.perplexity}, {spec.iterations} iterations"
    )
    t0 = time.perf_counter()
    embedding = tsne(data.features.values, spec, data.features.sample_ids)
    log.line(f"embedding done in {time.perf_counter() - t0:.2f}s, kl={embedding.kl_divergence:.6f}")
    out = Path(config.out)
    sample_classes = [data.class_names[c] for c in data.labels]
    write_embedding_csv(embedding, sample_classes, out / "embedding.csv")
    scatter_svg(
        embedding.coordinates,
        data.labels,
        data.class_names,
        out / "plot.svg",
        title=f"{network}: {data.n_classes}-class embedding",
    )
    print(f"embedded {data.n_samples} samples, final KL {embedding.kl_divergence:.4f}")
    return EXIT_OK


def cmd_silhouette(config: RunConfig, log: RunLog) -> int:
    network, feature_path = config.single_feature_file()
    data = _load_labeled(config, feature_path)
    log.line(f"silhouette {network}: {data.n_samples} samples, {data.n_classes} classes")
    report = silhouette(
        data.features.values, data.labels, class_names=data.class_names
    )
    out = Path(config.out)
    write_silhouette_csvs(
        report,
        data.features.sample_ids,
        data.labels,
        out / "silhouette.csv",
        out / "silhouette_samples.csv",
    )
    for name, mean in zip(report.class_names, report.class_means):
        print(f"{name:24} {mean:+.4f}")
    return EXIT_OK


def cmd_check(config: RunConfig, log=None) -> int:
    if config.manifest is None:
        raise UsageError("check needs a manifest path")
    manifest = load_manifest(config.manifest)
    if not config.features:
        raise UsageError("check needs at least one feature file")
    failures = 0
    for network, path in config.features.items():
        features = load_feature_matrix(path)
        report = validate_manifest(manifest, features)
        print(f"{network}: {path}")
        for name in manifest.class_names:
            count = report.class_counts.get(name, 0)
            augmented = report.augmented_counts.get(name, 0)
            suffix = f" ({count - augmented}+{augmented} augmented)" if augmented else ""
            print(f"  {name:24} {count}{suffix}")
        print(f"  All {len(manifest.class_names)}-class dataset: {report.total}")
        if not report.ok:
            failures += 1
            for finding in report.findings():
                print(f"  MISMATCH: {finding}", file=sys.stderr)
    if failures:
        raise DataError(f"{failures} feature file(s) failed manifest validation")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="dfbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("bench", "run the full benchmark grid"),
        ("eval", "evaluate one feature file with one classifier"),
        ("embed", "export a t-SNE embedding and scatter plot"),
        ("silhouette", "export per-class silhouette values"),
        ("check", "validate manifest against feature files"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--folds", type=int, default=None)
        p.add_argument("--classes", type=str, default=None, help="comma-separated subset")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--jobs", type=int, default=None, help="worker processes")
    return parser


HANDLERS = {
    "bench": cmd_bench,
    "eval": cmd_eval,
    "embed": cmd_embed,
    "silhouette": cmd_silhouette,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = RunConfig.load(args.config)
        config.apply_overrides(args)
        if args.command == "check":
            return cmd_check(config)
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        log = RunLog(out / "run.log")
        try:
            log.line(f"dfbench {args.command} seed={config.seed} folds={config.folds}")
            return HANDLERS[args.command](config, log)
        finally:
            log.close()
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, LookupError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (TrainingError, FloatingPointError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
