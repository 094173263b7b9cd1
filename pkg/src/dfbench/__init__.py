"""Deep-feature classification benchmark engine."""

__version__ = "0.1.0"

from .dataset import LabeledDataset, build_dataset
from .features import FeatureMatrix, load_feature_matrix, write_feature_matrix
from .folds import FoldPlan, stratified_folds
from .lda import LdaModel, LdaSpec, fit_lda, lda_scores
from .manifest import DatasetManifest, load_manifest, validate_manifest
from .metrics import ConfusionMatrix, accuracy_ci, metrics_from_cm, roc_auc
from .networks import NetworkSpec, network_registry, network_spec
from .rng import SeededRng
from .subspace import SubspaceEnsembleModel, SubspaceEnsembleSpec, fit_subspace_ensemble
from .svm import OvoSvmModel, SvmSpec, fit_binary_svm, fit_ovo_svm, kernel

__all__ = [
    "FeatureMatrix",
    "load_feature_matrix",
    "write_feature_matrix",
    "DatasetManifest",
    "load_manifest",
    "validate_manifest",
    "LabeledDataset",
    "build_dataset",
    "NetworkSpec",
    "network_registry",
    "network_spec",
    "SeededRng",
    "LdaModel",
    "LdaSpec",
    "fit_lda",
    "lda_scores",
    "SubspaceEnsembleModel",
    "SubspaceEnsembleSpec",
    "fit_subspace_ensemble",
    "SvmSpec",
    "OvoSvmModel",
    "fit_binary_svm",
    "fit_ovo_svm",
    "kernel",
    "FoldPlan",
    "stratified_folds",
    "ConfusionMatrix",
    "metrics_from_cm",
    "accuracy_ci",
    "roc_auc",
]
