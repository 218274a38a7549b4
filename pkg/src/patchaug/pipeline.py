"""Deterministic, parallel per-epoch augmentation pipeline.

Per image the pipeline applies basic augmentation, pushes the result into
the source buffer, resolves the epoch's mode, and applies the scheduled
patch method. Augmented results are recomputed fresh on every call and
never cached, so repeated epochs see new random draws.

Parallel execution is byte-identical to serial execution by construction:
every random draw comes from a stream keyed by (seed, epoch, position),
and buffer pushes happen in position order at a serial barrier between
the parallel basic-augmentation phase and the parallel patch phase. The
source for position i is drawn right after push i, exactly as if images
were processed one at a time, so image i's source pool is everything
pushed up to and including itself.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .basic import BasicAugConfig, basic_augment
from .buffer import BufferMode, SourceBuffer
from .dataset import LabeledImage
from .errors import ContractError
from .image import ImageBuf
from .patches import PatchParams, copyout, cutout, sample_pairing
from .rng import RngStream
from .schedule import Mode, PhasePlan, mode_for_epoch

DEFAULT_BATCH_SIZE = 128
DEFAULT_BUFFER_CAPACITY = 256


class Method(enum.Enum):
    """Top-level augmentation method selected for a run."""

    BASELINE = "baseline"
    CUTOUT = "cutout"
    COPYOUT = "copyout"
    SAMPLE_PAIRING = "samplepairing"
    COPY_PAIRING = "copypairing"


_SCHEDULED = (Method.SAMPLE_PAIRING, Method.COPY_PAIRING)
_FIXED_MODE = {
    Method.BASELINE: Mode.PLAIN,
    Method.CUTOUT: Mode.CUTOUT,
    Method.COPYOUT: Mode.COPYOUT,
}


def method_from_name(name: str) -> Method:
    by_value = {m.value: m for m in Method}
    if name not in by_value:
        raise ContractError(f"unknown method {name!r}; choose from {sorted(by_value)}")
    return by_value[name]


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a run needs: method, hyperparameters, and the seed."""

    method: Method
    seed: int
    extent: int = 16
    fill: float = 0.5
    plan: PhasePlan | None = None
    basic: BasicAugConfig = field(default_factory=BasicAugConfig)
    buffer_capacity: int = DEFAULT_BUFFER_CAPACITY
    buffer_mode: BufferMode = BufferMode.BUFFERED
    batch_size: int = DEFAULT_BATCH_SIZE

    def __post_init__(self):
        if self.batch_size < 1:
            raise ContractError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.method in _SCHEDULED and self.plan is None:
            raise ContractError(f"method {self.method.value} requires a phase plan")
        PatchParams(extent=self.extent, fill=self.fill)

    def validate_for_shape(self, height: int, width: int) -> None:
        """Check hyperparameters that depend on the dataset's image shape."""
        if self.method in (Method.CUTOUT, Method.COPYOUT, Method.COPY_PAIRING):
            PatchParams(extent=self.extent, fill=self.fill).validate_for_image(height, width)

    def make_buffer(self) -> SourceBuffer:
        return SourceBuffer(capacity=self.buffer_capacity, mode=self.buffer_mode)


def effective_mode(cfg: PipelineConfig, epoch: int) -> Mode:
    """Mode applied at `epoch`: fixed for single-mode methods, scheduled otherwise."""
    if cfg.method in _FIXED_MODE:
        return _FIXED_MODE[cfg.method]
    assert cfg.plan is not None
    return mode_for_epoch(cfg.plan, epoch)


def _needs_source(mode: Mode) -> bool:
    return mode in (Mode.COPYOUT, Mode.SAMPLE_PAIRING)


def _apply_mode(
    mode: Mode, cfg: PipelineConfig, t: ImageBuf, source: ImageBuf | None, stream: RngStream
) -> ImageBuf:
    if mode is Mode.PLAIN:
        return t
    if mode is Mode.CUTOUT:
        return cutout(t, stream, cfg.extent, cfg.fill)
    assert source is not None
    if mode is Mode.COPYOUT:
        return copyout(t, source, stream, cfg.extent)
    return sample_pairing(t, source)


def augment_one(
    cfg: PipelineConfig,
    buffer: SourceBuffer,
    img: ImageBuf,
    epoch: int,
    image_index: int,
    raw_sources: Sequence[ImageBuf] | None = None,
) -> ImageBuf:
    """Augment a single image: basic augmentation, push, scheduled patch method.

    `image_index` keys the random stream; the pipeline passes the image's
    position in the epoch's processing order. `raw_sources` supplies the
    training images for the buffer's no-buffer ablation mode.
    """
    cfg.validate_for_shape(img.height, img.width)
    stream = RngStream.for_image(cfg.seed, epoch, image_index)
    t = basic_augment(img, stream, cfg.basic)
    buffer.push(t)
    mode = effective_mode(cfg, epoch)
    source = buffer.sample(stream, raw_sources) if _needs_source(mode) else None
    return _apply_mode(mode, cfg, t, source, stream)


def _map_maybe_parallel(pool: ThreadPoolExecutor | None, fn: Callable, items: Sequence) -> list:
    if pool is None:
        return [fn(item) for item in items]
    return list(pool.map(fn, items))


def augment_epoch(
    cfg: PipelineConfig,
    dataset: Sequence[LabeledImage],
    epoch: int,
    buffer: SourceBuffer | None = None,
    workers: int = 1,
) -> Iterator[list[LabeledImage]]:
    """Yield mini-batches of augmented images covering a seeded epoch shuffle.

    The shuffle permutation depends only on (seed, epoch). Pass the same
    `buffer` across epochs to keep its contents warm; omit it for a fresh
    one. Output is byte-identical for any `workers` count.
    """
    n = len(dataset)
    if n == 0:
        raise ContractError("dataset is empty")
    if workers < 1:
        raise ContractError(f"workers must be >= 1, got {workers}")
    first = dataset[0].image
    cfg.validate_for_shape(first.height, first.width)
    if buffer is None:
        buffer = cfg.make_buffer()
    raw_sources = (
        [entry.image for entry in dataset] if cfg.buffer_mode is BufferMode.NO_BUFFER else None
    )
    mode = effective_mode(cfg, epoch)
    perm = RngStream.for_shuffle(cfg.seed, epoch).permutation(n)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for start in range(0, n, cfg.batch_size):
            positions = range(start, min(start + cfg.batch_size, n))
            entries = [dataset[perm[p]] for p in positions]
            streams = [RngStream.for_image(cfg.seed, epoch, p) for p in positions]

            basics = _map_maybe_parallel(
                pool,
                lambda pair: basic_augment(pair[0].image, pair[1], cfg.basic),
                list(zip(entries, streams)),
            )

            # Serial barrier: pushes in position order, each image's source
            # drawn immediately after its own push.
            sources: list[ImageBuf | None] = []
            for t, stream in zip(basics, streams):
                buffer.push(t)
                sources.append(buffer.sample(stream, raw_sources) if _needs_source(mode) else None)

            outs = _map_maybe_parallel(
                pool,
                lambda trip: _apply_mode(mode, cfg, trip[0], trip[1], trip[2]),
                list(zip(basics, sources, streams)),
            )
            yield [LabeledImage(e.label, out) for e, out in zip(entries, outs)]
    finally:
        if pool is not None:
            pool.shutdown()
