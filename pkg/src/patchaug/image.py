"""Pixel raster type and byte-domain conversions.

All augmentation operations work on :class:`ImageBuf`: an immutable
``(height, width, channels)`` raster of float32 values in ``[0, 1]``,
row-major and channel-interleaved. Conversion to and from 8-bit bytes
happens only at I/O boundaries, with a fixed rounding rule so byte-level
round trips are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, MalformedDataError

VALID_CHANNELS = (1, 3)


class ImageBuf:
    """Immutable float image in [0, 1], shape (height, width, channels)."""

    __slots__ = ("_data",)

    def __init__(self, data: np.ndarray):
        arr = np.asarray(data)
        if arr.ndim != 3:
            raise ContractError(f"image array must be 3-d (H, W, C), got shape {arr.shape}")
        h, w, c = arr.shape
        if h < 1 or w < 1:
            raise ContractError(f"image dimensions must be >= 1, got {h}x{w}")
        if c not in VALID_CHANNELS:
            raise ContractError(f"channel count must be one of {VALID_CHANNELS}, got {c}")
        arr = np.ascontiguousarray(arr, dtype=np.float32)
        if arr.size and (float(arr.min()) < 0.0 or float(arr.max()) > 1.0):
            raise ContractError("pixel values must lie in [0, 1]")
        arr = arr.copy()
        arr.flags.writeable = False
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        """Read-only (H, W, C) float32 view of the pixels."""
        return self._data

    @property
    def height(self) -> int:
        return self._data.shape[0]

    @property
    def width(self) -> int:
        return self._data.shape[1]

    @property
    def channels(self) -> int:
        return self._data.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        return self._data.shape

    def to_array(self) -> np.ndarray:
        """Writable float32 copy of the pixels."""
        return self._data.copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageBuf):
            return NotImplemented
        return self._data.shape == other._data.shape and bool(
            np.array_equal(self._data, other._data)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ImageBuf({self.height}x{self.width}x{self.channels})"


@dataclass(frozen=True)
class Rect:
    """Half-open pixel spans [row_start, row_end) x [col_start, col_end)."""

    row_start: int
    row_end: int
    col_start: int
    col_end: int

    def __post_init__(self):
        if not (0 <= self.row_start <= self.row_end and 0 <= self.col_start <= self.col_end):
            raise ContractError(f"invalid rect spans: {self}")

    @property
    def height(self) -> int:
        return self.row_end - self.row_start

    @property
    def width(self) -> int:
        return self.col_end - self.col_start

    @property
    def area(self) -> int:
        return self.height * self.width


def from_bytes(raw: bytes | bytearray | np.ndarray, height: int, width: int, channels: int) -> ImageBuf:
    """Decode interleaved row-major bytes into a [0, 1] float image.

    Each byte b maps to b / 255.0. Raises MalformedDataError when the byte
    count does not match height * width * channels.
    """
    buf = np.frombuffer(bytes(raw), dtype=np.uint8) if not isinstance(raw, np.ndarray) else raw
    if buf.dtype != np.uint8:
        raise MalformedDataError(f"pixel bytes must be uint8, got {buf.dtype}")
    expected = height * width * channels
    if buf.size != expected:
        raise MalformedDataError(
            f"byte count {buf.size} does not match {height}x{width}x{channels} = {expected}"
        )
    scaled = buf.reshape(height, width, channels).astype(np.float32) / np.float32(255.0)
    return ImageBuf(scaled)


def to_bytes(img: ImageBuf) -> bytes:
    """Encode an image to interleaved bytes: round(v * 255) half away from zero."""
    # floor(x + 0.5) is half-away-from-zero for x >= 0; values here are in [0, 255].
    scaled = np.floor(img.data.astype(np.float64) * 255.0 + 0.5)
    return np.clip(scaled, 0, 255).astype(np.uint8).tobytes()
