"""Offline deep-feature extractor for the benchmark engine."""

__version__ = "0.1.0"

from .augment import augment_rescale
from .extract import ExtractionJob, extract
from .networks import extractor_network, extractor_networks
from .preprocess import preprocess, preprocess_file

__all__ = [
    "ExtractionJob",
    "extract",
    "augment_rescale",
    "extractor_network",
    "extractor_networks",
    "preprocess",
    "preprocess_file",
]
