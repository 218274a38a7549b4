"""Dataset and image file I/O: CIFAR-10 binary batches, PPM, preview grids.

PPM (binary P6, maxval 255) is the interchange format for augmented
output. It round-trips the byte domain exactly, which the determinism
checks rely on, and needs no codec dependency.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ContractError, MalformedDataError
from .image import ImageBuf, from_bytes, to_bytes

CIFAR10_RECORD_BYTES = 3073  # 1 label byte + 32*32*3 pixel bytes
CIFAR10_CLASSES = 10
CIFAR10_SIDE = 32


@dataclass(frozen=True)
class LabeledImage:
    """An image plus its integer class label (unused by augmentation)."""

    label: int
    image: ImageBuf


def read_cifar10_batch(path: str | Path) -> list[LabeledImage]:
    """Parse a CIFAR-10 binary batch file.

    Each 3073-byte record is one label byte followed by 3072 pixel bytes
    in planar order (1024 red, 1024 green, 1024 blue, each row-major),
    converted here to interleaved float images.
    """
    raw = Path(path).read_bytes()
    if len(raw) == 0 or len(raw) % CIFAR10_RECORD_BYTES != 0:
        raise MalformedDataError(
            f"{path}: length {len(raw)} is not a positive multiple of {CIFAR10_RECORD_BYTES}"
        )
    records = np.frombuffer(raw, dtype=np.uint8).reshape(-1, CIFAR10_RECORD_BYTES)
    labels = records[:, 0]
    bad = np.nonzero(labels >= CIFAR10_CLASSES)[0]
    if bad.size:
        raise MalformedDataError(
            f"{path}: record {bad[0]} has label {labels[bad[0]]} >= {CIFAR10_CLASSES}"
        )
    # planar (3, 32, 32) -> interleaved (32, 32, 3)
    pixels = records[:, 1:].reshape(-1, 3, CIFAR10_SIDE, CIFAR10_SIDE).transpose(0, 2, 3, 1)
    return [
        LabeledImage(int(labels[i]), from_bytes(pixels[i].reshape(-1), CIFAR10_SIDE, CIFAR10_SIDE, 3))
        for i in range(records.shape[0])
    ]


def write_ppm(img: ImageBuf, path: str | Path) -> None:
    """Write a 3-channel image as binary PPM: `P6\\n{w} {h}\\n255\\n` + RGB bytes."""
    if img.channels != 3:
        raise ContractError(f"PPM output requires 3 channels, got {img.channels}")
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + to_bytes(img))


def _read_ppm_token(stream: io.BufferedIOBase) -> bytes:
    """Next whitespace-delimited header token, skipping `#` comments."""
    token = b""
    while True:
        ch = stream.read(1)
        if ch == b"":
            raise MalformedDataError("truncated PPM header")
        if ch == b"#":
            while ch not in (b"\n", b""):
                ch = stream.read(1)
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def read_ppm(path: str | Path) -> ImageBuf:
    """Read a binary PPM written by write_ppm (P6, maxval 255 only)."""
    with open(path, "rb") as fh:
        magic = fh.read(2)
        if magic != b"P6":
            raise MalformedDataError(f"{path}: not a binary PPM (magic {magic!r})")
        try:
            width = int(_read_ppm_token(fh))
            height = int(_read_ppm_token(fh))
            maxval = int(_read_ppm_token(fh))
        except ValueError as exc:
            raise MalformedDataError(f"{path}: non-numeric PPM header field") from exc
        if maxval != 255:
            raise MalformedDataError(f"{path}: unsupported maxval {maxval} (only 255)")
        if width < 1 or height < 1:
            raise MalformedDataError(f"{path}: invalid dimensions {width}x{height}")
        payload = fh.read(width * height * 3)
    if len(payload) != width * height * 3:
        raise MalformedDataError(
            f"{path}: truncated pixel payload ({len(payload)} of {width * height * 3} bytes)"
        )
    return from_bytes(payload, height, width, 3)


def write_preview_grid(images: Sequence[ImageBuf], columns: int, path: str | Path) -> None:
    """Tile images row-major into one PPM with 2-pixel black separators.

    A single image writes out unchanged. Columns beyond the image count
    collapse to the count; an incomplete last row is padded with black.
    """
    if not images:
        raise ContractError("preview grid needs at least one image")
    if columns < 1:
        raise ContractError(f"columns must be >= 1, got {columns}")
    shape = images[0].shape
    for img in images[1:]:
        if img.shape != shape:
            raise ContractError(f"grid images must share one shape: {shape} vs {img.shape}")
    h, w, c = shape
    if c != 3:
        raise ContractError(f"preview grid requires 3-channel images, got {c}")

    sep = 2
    cols = min(columns, len(images))
    grid_rows = -(-len(images) // cols)
    canvas = np.zeros(
        (grid_rows * h + (grid_rows - 1) * sep, cols * w + (cols - 1) * sep, c),
        dtype=np.float32,
    )
    for i, img in enumerate(images):
        r, col = divmod(i, cols)
        top, left = r * (h + sep), col * (w + sep)
        canvas[top:top + h, left:left + w, :] = img.data
    write_ppm(ImageBuf(canvas), path)
