"""Run configuration: a JSON file plus command-line overrides.

Benchmark grids pair every feature file with every classifier spec, which is
unwieldy as flags; the config file carries the grid and the flags override
the scalar knobs (seed, folds, classes, output directory, worker count).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import UsageError
from .lda import LdaSpec
from .subspace import SubspaceEnsembleSpec
from .svm import SvmSpec

DEFAULT_CLASSIFIERS = [
    {"kind": "subspace_discriminant"},
    {"kind": "quadratic_svm"},
    {"kind": "gaussian_svm"},
]


@dataclass
class RunConfig:
    features: dict[str, str] = field(default_factory=dict)
    manifest: str | None = None
    classes: list[str] | None = None
    classifiers: list[dict] = field(default_factory=lambda: list(DEFAULT_CLASSIFIERS))
    classifier: dict | None = None  # single-pipeline commands prefer this
    network: str | None = None
    folds: int = 5
    seed: int = 0
    out: str = "results"
    jobs: int | None = None
    tsne: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path) -> "RunConfig":
        path = Path(path)
        if not path.exists():
            raise UsageError(f"config file not found: {path}")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file is not valid JSON: {exc}") from exc
        config = cls()
        known = set(config.__dataclass_fields__)
        for key, value in raw.items():
            if key not in known:
                raise UsageError(f"unknown config key {key!r}")
            setattr(config, key, value)
        return config

    def single_classifier(self) -> dict:
        if self.classifier is not None:
            return self.classifier
        if len(self.classifiers) == 1:
            return self.classifiers[0]
        raise UsageError(
            "several classifiers configured; pick one with the 'classifier' key"
        )

    def apply_overrides(self, args) -> None:
        if getattr(args, "seed", None) is not None:
            self.seed = args.seed
        if getattr(args, "folds", None) is not None:
            self.folds = args.folds
        if getattr(args, "classes", None):
            self.classes = [c.strip() for c in args.classes.split(",") if c.strip()]
        if getattr(args, "out", None) is not None:
            self.out = args.out
        if getattr(args, "jobs", None) is not None:
            self.jobs = args.jobs

    def single_feature_file(self) -> tuple[str, str]:
        """The (network, path) pair for single-pipeline commands."""
        if not self.features:
            raise UsageError("config declares no feature files")
        if self.network is not None:
            if self.network not in self.features:
                raise UsageError(f"network {self.network!r} not among feature files")
            return self.network, self.features[self.network]
        if len(self.features) > 1:
            raise UsageError(
                "several feature files configured; pick one with the 'network' key"
            )
        return next(iter(self.features.items()))


def classifier_label(spec_dict: dict) -> str:
    return spec_dict.get("kind", "unknown")


def build_classifier(spec_dict: dict, seed: int):
    """Instantiate a classifier spec from its config dictionary."""
    if not isinstance(spec_dict, dict) or "kind" not in spec_dict:
        raise UsageError(f"classifier spec needs a 'kind': {spec_dict!r}")
    kind = spec_dict["kind"]
    options = {k: v for k, v in spec_dict.items() if k != "kind"}
    try:
        if kind == "lda":
            return LdaSpec(**options)
        if kind == "subspace_discriminant":
            options.setdefault("seed", seed)
            return SubspaceEnsembleSpec(**options)
        if kind == "quadratic_svm":
            return SvmSpec(kernel="quadratic", **options)
        if kind == "gaussian_svm":
            return SvmSpec(kernel="gaussian", **options)
    except TypeError as exc:
        raise UsageError(f"bad options for classifier {kind!r}: {exc}") from exc
    raise UsageError(
        f"unknown classifier kind {kind!r}; expected lda, subspace_discriminant, "
        "quadratic_svm or gaussian_svm"
    )
