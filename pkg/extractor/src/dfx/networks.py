"""Supported feature-extraction networks and their model-zoo backings.

Input sizes and layer names follow the benchmark engine's registry; every
network ends in a 1000-way fully connected layer whose pre-softmax logits are
the extracted features. Architectures absent from torchvision are substituted
by the closest published equivalent, and the substitution is recorded in the
manifest provenance notes of every file produced with them.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass


@dataclass(frozen=True)
class ExtractorNetwork:
    name: str
    input_height: int
    input_width: int
    fc_layer_name: str
    torchvision_arch: str
    substitution_note: str | None = None

    @property
    def weight_seed(self) -> int:
        # stable per-network seed for untrained-weight mode
        return zlib.crc32(self.name.encode("utf-8"))


_NETWORKS = (
    ExtractorNetwork("AlexNet", 227, 227, "fc8", "alexnet"),
    ExtractorNetwork(
        "Inception-ResNet-v2", 299, 299, "predictions", "inception_v3",
        "substituted by torchvision inception_v3 (same family, 299x299 input)",
    ),
    ExtractorNetwork("DenseNet-201", 224, 224, "fc1000", "densenet201"),
    ExtractorNetwork("ResNet-18", 224, 224, "fc1000", "resnet18"),
    ExtractorNetwork("ResNet-50", 224, 224, "fc1000", "resnet50"),
    ExtractorNetwork("ResNet-101", 224, 224, "fc1000", "resnet101"),
    ExtractorNetwork("VGG-16", 224, 224, "fc8", "vgg16"),
    ExtractorNetwork("VGG-19", 224, 224, "fc8", "vgg19"),
    ExtractorNetwork("MobileNet-v2", 224, 224, "Logits", "mobilenet_v2"),
    ExtractorNetwork(
        "ShuffleNet", 224, 224, "node_202", "shufflenet_v2_x1_0",
        "substituted by torchvision shufflenet_v2_x1_0 (v1 not published there)",
    ),
    ExtractorNetwork("GoogLeNet", 224, 224, "loss3-classifier", "googlenet"),
    ExtractorNetwork(
        "Xception", 299, 299, "predictions", "inception_v3",
        "substituted by torchvision inception_v3 (closest 299x299 relative)",
    ),
    ExtractorNetwork(
        "NASNet-Mobile", 224, 224, "predictions", "mnasnet1_0",
        "substituted by torchvision mnasnet1_0 (closest mobile NAS design)",
    ),
    ExtractorNetwork(
        "NASNet-Large", 331, 331, "predictions", "efficientnet_b3",
        "substituted by torchvision efficientnet_b3 (closest large NAS design)",
    ),
)


def extractor_networks() -> tuple[ExtractorNetwork, ...]:
    return _NETWORKS


def extractor_network(name: str) -> ExtractorNetwork:
    for net in _NETWORKS:
        if net.name == name:
            return net
    known = ", ".join(n.name for n in _NETWORKS)
    raise LookupError(f"unknown network {name!r}; known networks: {known}")
