"""Counter-based random streams for order-independent determinism.

Every random decision in the pipeline is drawn from a stream keyed by
(seed, epoch, image index), backed by the Philox counter-based generator.
The k-th draw from a stream is a pure function of its key and k, so any
number of workers can augment images in any order and still produce
byte-identical results.

Draw-order contract (what each consumer takes from its stream, in order):

* basic augmentation: angle, zoom_row, zoom_col, flip  (always 4 draws)
* source selection:   one index draw (buffer slot, or dataset index in
                      no-buffer mode), only on copyout/pairing epochs
* copyout:            target center row, col, then source top-left row, col
* cutout:             target center row, col

The per-epoch shuffle uses a dedicated stream kind so it can never collide
with a per-image stream.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractError

_KIND_IMAGE = 0
_KIND_SHUFFLE = 1

_EPOCH_BITS = 20
_INDEX_BITS = 40
_MAX_SEED = 2**64


class RngStream:
    """Deterministic random stream keyed by (seed, epoch, image_index).

    Use :meth:`for_image` / :meth:`for_shuffle` rather than the raw
    constructor; they encode the stream kind into the key.
    """

    __slots__ = ("seed", "epoch", "image_index", "draws", "_gen")

    def __init__(self, seed: int, epoch: int = 0, image_index: int = 0, _kind: int = _KIND_IMAGE):
        if not (0 <= seed < _MAX_SEED):
            raise ContractError(f"seed must fit in 64 bits, got {seed}")
        if not (0 <= epoch < 2**_EPOCH_BITS):
            raise ContractError(f"epoch out of range: {epoch}")
        if not (0 <= image_index < 2**_INDEX_BITS):
            raise ContractError(f"image_index out of range: {image_index}")
        self.seed = seed
        self.epoch = epoch
        self.image_index = image_index
        self.draws = 0
        word = (_kind << (_EPOCH_BITS + _INDEX_BITS)) | (epoch << _INDEX_BITS) | image_index
        key = np.array([seed, word], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    @classmethod
    def for_image(cls, seed: int, epoch: int, image_index: int) -> "RngStream":
        """Stream driving all augmentation draws for one image at one epoch."""
        return cls(seed, epoch, image_index, _kind=_KIND_IMAGE)

    @classmethod
    def for_shuffle(cls, seed: int, epoch: int) -> "RngStream":
        """Stream driving the epoch's dataset permutation."""
        return cls(seed, epoch, 0, _kind=_KIND_SHUFFLE)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n < 1:
            raise ContractError(f"randbelow needs n >= 1, got {n}")
        self.draws += 1
        return int(self._gen.integers(0, n))

    def uniform(self, low: float, high: float) -> float:
        """Uniform float in [low, high)."""
        self.draws += 1
        return float(self._gen.uniform(low, high))

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        self.draws += 1
        return float(self._gen.random())

    def permutation(self, n: int) -> np.ndarray:
        """Uniform permutation of range(n)."""
        self.draws += 1
        return self._gen.permutation(n)
