"""Baseline per-image augmentation: random rotation, zoom, and horizontal flip.

The warp uses inverse mapping about the image center: each output pixel
samples the input at the rotated/scaled position, with bilinear
interpolation and nearest-edge fill for samples that land outside the
image. Rotation and zoom are composed into a single resampling pass so
the image is only interpolated once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .image import ImageBuf
from .rng import RngStream


@dataclass(frozen=True)
class BasicAugConfig:
    """Draw ranges for the baseline augmentation.

    rotation_range: max rotation in degrees, drawn from [-r, +r]
    zoom_range:     max zoom deviation, per-axis factors drawn from [1-z, 1+z]
    horizontal_flip: flip with probability 0.5 when enabled
    """

    rotation_range: float = 15.0
    zoom_range: float = 0.2
    horizontal_flip: bool = True

    def __post_init__(self):
        if self.rotation_range < 0:
            raise ContractError(f"rotation_range must be >= 0, got {self.rotation_range}")
        if not (0.0 <= self.zoom_range < 1.0):
            raise ContractError(f"zoom_range must lie in [0, 1), got {self.zoom_range}")

    @classmethod
    def identity(cls) -> "BasicAugConfig":
        """Configuration under which basic_augment is an exact no-op."""
        return cls(rotation_range=0.0, zoom_range=0.0, horizontal_flip=False)


def hflip(img: ImageBuf) -> ImageBuf:
    """Reverse column order per row; channels untouched."""
    return ImageBuf(img.data[:, ::-1, :])


def affine_warp(img: ImageBuf, angle: float, zoom_row: float, zoom_col: float) -> ImageBuf:
    """Rotate by `angle` degrees and scale per axis, about the image center.

    Inverse map for output pixel (r, c), with centered coords y = r - cy,
    x = c - cx (center at ((H-1)/2, (W-1)/2)):

        src_y = cy + cos(a) * zoom_row * y - sin(a) * zoom_col * x
        src_x = cx + sin(a) * zoom_row * y + cos(a) * zoom_col * x

    so zoom factors > 1 sample a wider input area (the image shrinks).
    Source positions are clamped to the image before bilinear sampling,
    which replicates edge pixels outward. The identity transform
    (angle 0, zooms 1) reproduces the input exactly.
    """
    if zoom_row <= 0 or zoom_col <= 0:
        raise ContractError(f"zoom factors must be > 0, got ({zoom_row}, {zoom_col})")
    h, w = img.height, img.width
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    theta = math.radians(angle)
    cos_a, sin_a = math.cos(theta), math.sin(theta)

    rows, cols = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64), indexing="ij")
    y = (rows - cy) * zoom_row
    x = (cols - cx) * zoom_col
    src_y = np.clip(cy + cos_a * y - sin_a * x, 0.0, h - 1)
    src_x = np.clip(cx + sin_a * y + cos_a * x, 0.0, w - 1)

    y0 = np.floor(src_y).astype(np.intp)
    x0 = np.floor(src_x).astype(np.intp)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (src_y - y0)[..., None]
    fx = (src_x - x0)[..., None]

    data = img.data.astype(np.float64)
    out = (
        data[y0, x0] * (1.0 - fy) * (1.0 - fx)
        + data[y0, x1] * (1.0 - fy) * fx
        + data[y1, x0] * fy * (1.0 - fx)
        + data[y1, x1] * fy * fx
    )
    return ImageBuf(np.clip(out, 0.0, 1.0).astype(np.float32))


def basic_augment(img: ImageBuf, rng: RngStream, cfg: BasicAugConfig) -> ImageBuf:
    """Apply one random rotation+zoom warp, then an optional horizontal flip.

    Fixed draw order (angle, zoom_row, zoom_col, flip); the flip draw is
    consumed even when flipping is disabled, so every call takes exactly
    four draws from the stream.
    """
    angle = rng.uniform(-cfg.rotation_range, cfg.rotation_range)
    zoom_row = rng.uniform(1.0 - cfg.zoom_range, 1.0 + cfg.zoom_range)
    zoom_col = rng.uniform(1.0 - cfg.zoom_range, 1.0 + cfg.zoom_range)
    flip_draw = rng.random()
    out = affine_warp(img, angle, zoom_row, zoom_col)
    if cfg.horizontal_flip and flip_draw < 0.5:
        out = hflip(out)
    return out
