"""Image preparation: resize to the network's input, replicate grayscale,
apply the model zoo's published channel normalization."""

from __future__ import annotations

import numpy as np
import torch
from PIL import Image

from .networks import ExtractorNetwork

# torchvision's ImageNet normalization, shared by all supported models
CHANNEL_MEAN = (0.485, 0.456, 0.406)
CHANNEL_STD = (0.229, 0.224, 0.225)


def load_image(path) -> Image.Image:
    try:
        image = Image.open(path)
        image.load()
    except Exception as exc:
        raise ValueError(f"cannot decode image {path}: {exc}") from exc
    return image


def preprocess(image: Image.Image, net: ExtractorNetwork) -> torch.Tensor:
    """CHW float tensor sized for the network, normalized per channel."""
    rgb = image.convert("RGB")  # grayscale X-rays replicate into 3 channels
    resized = rgb.resize((net.input_width, net.input_height), Image.BILINEAR)
    array = np.asarray(resized, dtype=np.float32) / 255.0
    chw = np.transpose(array, (2, 0, 1))
    mean = np.asarray(CHANNEL_MEAN, dtype=np.float32).reshape(3, 1, 1)
    std = np.asarray(CHANNEL_STD, dtype=np.float32).reshape(3, 1, 1)
    return torch.from_numpy((chw - mean) / std)


def preprocess_file(path, net: ExtractorNetwork) -> torch.Tensor:
    return preprocess(load_image(path), net)
