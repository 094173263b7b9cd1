"""Registry of the 14 pretrained networks used as feature extractors.

Every network ends in a 1000-way fully connected layer, so all feature files
carry 1000 columns regardless of architecture. Input sizes and layer names
drive the offline extractor; layer counts and parameter counts are carried
for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

FEATURE_DIM = 1000


@dataclass(frozen=True)
class NetworkSpec:
    name: str
    input_height: int
    input_width: int
    input_channels: int
    fc_layer_name: str
    n_layers: int
    n_params_millions: float


_REGISTRY = (
    NetworkSpec("AlexNet", 227, 227, 3, "fc8", 25, 61.0),
    NetworkSpec("Inception-ResNet-v2", 299, 299, 3, "predictions", 824, 23.2),
    NetworkSpec("DenseNet-201", 224, 224, 3, "fc1000", 708, 20.0),
    NetworkSpec("ResNet-18", 224, 224, 3, "fc1000", 71, 11.7),
    NetworkSpec("ResNet-50", 224, 224, 3, "fc1000", 177, 25.6),
    NetworkSpec("ResNet-101", 224, 224, 3, "fc1000", 347, 44.6),
    NetworkSpec("VGG-16", 224, 224, 3, "fc8", 41, 138.0),
    NetworkSpec("VGG-19", 224, 224, 3, "fc8", 47, 144.0),
    NetworkSpec("MobileNet-v2", 224, 224, 3, "Logits", 154, 3.5),
    NetworkSpec("ShuffleNet", 224, 224, 3, "node_202", 172, 1.4),
    NetworkSpec("GoogLeNet", 224, 224, 3, "loss3-classifier", 144, 7.0),
    NetworkSpec("Xception", 299, 299, 3, "predictions", 170, 22.9),
    NetworkSpec("NASNet-Mobile", 224, 224, 3, "predictions", 913, 5.3),
    NetworkSpec("NASNet-Large", 331, 331, 3, "predictions", 1243, 88.9),
)


def network_registry() -> tuple[NetworkSpec, ...]:
    """All 14 network specs, in canonical order."""
    return _REGISTRY


def network_spec(name: str) -> NetworkSpec:
    for spec in _REGISTRY:
        if spec.name == name:
            return spec
    known = ", ".join(s.name for s in _REGISTRY)
    raise LookupError(f"unknown network {name!r}; known networks: {known}")
