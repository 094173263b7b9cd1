"""Class balancing by rescale augmentation.

A seeded draw picks images from the class directory; each is rescaled by a
random factor in [0.8, 1.2] and cropped or padded back to its original
canvas, so the network sees genuinely different content at the same size.
A plain resize would be undone by input preprocessing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from PIL import Image

from .extract import IMAGE_SUFFIXES

SCALE_LOW = 0.8
SCALE_HIGH = 1.2


@dataclass(frozen=True)
class AugmentedImage:
    source: Path
    output: Path
    scale: float


def rescale_to_canvas(image: Image.Image, factor: float) -> Image.Image:
    """Scale content by factor, keep the original canvas size."""
    width, height = image.size
    new_w = max(1, round(width * factor))
    new_h = max(1, round(height * factor))
    resized = image.resize((new_w, new_h), Image.BILINEAR)
    if factor >= 1.0:
        left = (new_w - width) // 2
        top = (new_h - height) // 2
        return resized.crop((left, top, left + width, top + height))
    canvas = Image.new(image.mode, (width, height), 0)
    canvas.paste(resized, ((width - new_w) // 2, (height - new_h) // 2))
    return canvas


def augment_rescale(class_dir, count: int, seed: int = 0) -> list[AugmentedImage]:
    """Write `count` rescaled copies into the class directory."""
    directory = Path(class_dir)
    images = sorted(
        p for p in directory.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES
    )
    if not images:
        raise ValueError(f"no images in class directory {directory}")
    if count == 0:
        return []
    if count > len(images):
        raise ValueError(
            f"cannot augment {count} from {len(images)} available images"
        )
    rng = random.Random(seed)
    chosen = rng.sample(images, count)
    out = []
    for index, source in enumerate(chosen):
        factor = rng.uniform(SCALE_LOW, SCALE_HIGH)
        with Image.open(source) as img:
            img.load()
            augmented = rescale_to_canvas(img, factor)
        target = source.with_name(f"{source.stem}_aug{index}{source.suffix}")
        augmented.save(target)
        out.append(AugmentedImage(source, target, factor))
    return out
