"""Patch-level augmentation: copyout, cutout, and sample pairing.

All three share one square geometry: a square of side ``extent`` is placed
with its center anywhere on the target image, and the part hanging over
the border is clipped away. Clipping can turn the square into a rectangle;
the center itself never leaves the image, so the clipped region is never
empty. Copyout fills the region with pixels from a second image, cutout
fills it with a constant, and sample pairing skips the geometry entirely
and averages two whole images.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .image import ImageBuf, Rect
from .rng import RngStream


@dataclass(frozen=True)
class PatchParams:
    """Square side length plus the constant fill value used by cutout."""

    extent: int = 16
    fill: float = 0.5

    def __post_init__(self):
        if self.extent < 1:
            raise ContractError(f"extent must be >= 1, got {self.extent}")
        if not (0.0 <= self.fill <= 1.0):
            raise ContractError(f"fill must lie in [0, 1], got {self.fill}")

    def validate_for_image(self, height: int, width: int) -> None:
        """The square must be strictly smaller than the image."""
        if self.extent >= min(height, width):
            raise ContractError(
                f"extent {self.extent} must be smaller than the image "
                f"(min dimension {min(height, width)})"
            )


def clip_square(center_row: int, center_col: int, extent: int, height: int, width: int) -> Rect:
    """Clip a square of side `extent` centered at (center_row, center_col).

    The square spans rows [center - extent//2, center - extent//2 + extent),
    same for columns, intersected with the image. One formula covers even
    and odd extents; even squares sit half a pixel off true center.
    """
    if not (0 <= center_row < height and 0 <= center_col < width):
        raise ContractError(
            f"center ({center_row}, {center_col}) outside {height}x{width} image"
        )
    if extent < 1:
        raise ContractError(f"extent must be >= 1, got {extent}")
    half = extent // 2
    return Rect(
        row_start=max(center_row - half, 0),
        row_end=min(center_row - half + extent, height),
        col_start=max(center_col - half, 0),
        col_end=min(center_col - half + extent, width),
    )


def sample_target_center(rng: RngStream, height: int, width: int) -> tuple[int, int]:
    """Uniform pixel position over the full image grid; row drawn first."""
    if height < 1 or width < 1:
        raise ContractError(f"image dimensions must be >= 1, got {height}x{width}")
    return rng.randbelow(height), rng.randbelow(width)


def sample_source_topleft(rng: RngStream, height: int, width: int, extent: int) -> tuple[int, int]:
    """Uniform top-left corner keeping an extent-sized square fully inside."""
    if extent > height or extent > width:
        raise ContractError(
            f"extent {extent} does not fit inside a {height}x{width} source image"
        )
    return rng.randbelow(height - extent + 1), rng.randbelow(width - extent + 1)


def _require_same_shape(a: ImageBuf, b: ImageBuf) -> None:
    if a.shape != b.shape:
        raise ContractError(f"shape mismatch: {a.shape} vs {b.shape}")


def copyout(target: ImageBuf, source: ImageBuf, rng: RngStream, extent: int) -> ImageBuf:
    """Copy a random square patch of `source` onto a random spot of `target`.

    The target-side square may clip at the border; the source-side square
    never does. When the target region is clipped, the leading (top-left)
    sub-rectangle of the source square of the same size is used.
    """
    _require_same_shape(target, source)
    h, w = target.height, target.width
    cr, cc = sample_target_center(rng, h, w)
    rect = clip_square(cr, cc, extent, h, w)
    sr, sc = sample_source_topleft(rng, h, w, extent)
    out = target.to_array()
    out[rect.row_start:rect.row_end, rect.col_start:rect.col_end, :] = source.data[
        sr:sr + rect.height, sc:sc + rect.width, :
    ]
    return ImageBuf(out)


def cutout(target: ImageBuf, rng: RngStream, extent: int, fill: float = 0.5) -> ImageBuf:
    """Overwrite a random (clippable) square of `target` with a constant fill."""
    if not (0.0 <= fill <= 1.0):
        raise ContractError(f"fill must lie in [0, 1], got {fill}")
    cr, cc = sample_target_center(rng, target.height, target.width)
    rect = clip_square(cr, cc, extent, target.height, target.width)
    out = target.to_array()
    out[rect.row_start:rect.row_end, rect.col_start:rect.col_end, :] = np.float32(fill)
    return ImageBuf(out)


def sample_pairing(a: ImageBuf, b: ImageBuf) -> ImageBuf:
    """Per-pixel average of two images of the same shape."""
    _require_same_shape(a, b)
    return ImageBuf((a.data + b.data) / np.float32(2.0))
