"""Ring buffer of recently augmented images used as patch/pairing sources.

Copyout and sample pairing draw their source image from this buffer, so
sources carry the same baseline augmentation as targets. The buffer keeps
the most recent `capacity` images with strict FIFO eviction. The no-buffer
mode is an ablation: sources come straight from the raw training set with
no augmentation at all.
"""

from __future__ import annotations

import enum
import threading
from typing import Sequence

from .errors import ContractError
from .image import ImageBuf
from .rng import RngStream


class BufferMode(enum.Enum):
    BUFFERED = "buffered"
    NO_BUFFER = "nobuffer"


class SourceBuffer:
    """Fixed-capacity FIFO ring of source images.

    Callers must push only images that already went through basic
    augmentation; the buffer cannot check provenance. push() and sample()
    serialize on an internal lock. Stored images are immutable, so sampled
    values stay valid after later evictions.
    """

    def __init__(self, capacity: int = 256, mode: BufferMode = BufferMode.BUFFERED):
        if mode is BufferMode.BUFFERED and capacity < 1:
            raise ContractError(f"buffer capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.mode = mode
        self._slots: list[ImageBuf] = []
        self._next = 0  # ring write position once full
        self._lock = threading.Lock()
        self._shape: tuple[int, int, int] | None = None

    @property
    def filled(self) -> int:
        return len(self._slots)

    def push(self, img: ImageBuf) -> None:
        """Store an image, evicting the oldest once at capacity.

        No-op in no-buffer mode, where sources bypass the buffer entirely.
        """
        if self.mode is BufferMode.NO_BUFFER:
            return
        with self._lock:
            if self._shape is None:
                self._shape = img.shape
            elif img.shape != self._shape:
                raise ContractError(f"shape mismatch: buffer holds {self._shape}, got {img.shape}")
            if len(self._slots) < self.capacity:
                self._slots.append(img)
            else:
                self._slots[self._next] = img
                self._next = (self._next + 1) % self.capacity

    def sample(self, rng: RngStream, training_set: Sequence[ImageBuf] | None = None) -> ImageBuf:
        """Draw a uniform source image.

        Buffered mode draws over the filled slots (possibly returning the
        caller's own pushed image). No-buffer mode draws a raw image from
        `training_set` instead, which must then be provided.
        """
        if self.mode is BufferMode.NO_BUFFER:
            if not training_set:
                raise ContractError("no-buffer sampling requires a nonempty training set")
            return training_set[rng.randbelow(len(training_set))]
        with self._lock:
            if not self._slots:
                raise ContractError("cannot sample from an empty buffer; push first")
            return self._slots[rng.randbelow(len(self._slots))]

    def snapshot(self) -> list[ImageBuf]:
        """Current contents, oldest first."""
        with self._lock:
            if len(self._slots) < self.capacity:
                return list(self._slots)
            return self._slots[self._next:] + self._slots[:self._next]
