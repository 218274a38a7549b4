"""patchaug: deterministic patch-copy image augmentation engine.

Implements copyout (copy a random square from another training image onto
the target), cutout (constant-fill occlusion), sample pairing (per-pixel
averaging), the source-image ring buffer that keeps pairing sources
augmented, and the three-phase epoch schedule that alternates pairing
with a base mode.
"""

from .basic import BasicAugConfig, affine_warp, basic_augment, hflip
from .buffer import BufferMode, SourceBuffer
from .dataset import (
    LabeledImage,
    read_cifar10_batch,
    read_ppm,
    write_ppm,
    write_preview_grid,
)
from .errors import ContractError, MalformedDataError
from .image import ImageBuf, Rect, from_bytes, to_bytes
from .patches import (
    PatchParams,
    clip_square,
    copyout,
    cutout,
    sample_pairing,
    sample_source_topleft,
    sample_target_center,
)
from .pipeline import (
    Method,
    PipelineConfig,
    augment_epoch,
    augment_one,
    effective_mode,
    method_from_name,
)
from .rng import RngStream
from .schedule import (
    Mode,
    PhasePlan,
    PRESETS,
    ScheduleTable,
    dump_table,
    mode_for_epoch,
    mode_from_name,
    pairing_epoch_count,
    preset,
)

__version__ = "0.1.0"

__all__ = [
    "BasicAugConfig",
    "BufferMode",
    "ContractError",
    "ImageBuf",
    "LabeledImage",
    "MalformedDataError",
    "Method",
    "Mode",
    "PRESETS",
    "PatchParams",
    "PhasePlan",
    "PipelineConfig",
    "Rect",
    "RngStream",
    "ScheduleTable",
    "SourceBuffer",
    "affine_warp",
    "augment_epoch",
    "augment_one",
    "basic_augment",
    "clip_square",
    "copyout",
    "cutout",
    "dump_table",
    "effective_mode",
    "from_bytes",
    "hflip",
    "method_from_name",
    "mode_for_epoch",
    "mode_from_name",
    "pairing_epoch_count",
    "preset",
    "read_cifar10_batch",
    "read_ppm",
    "sample_pairing",
    "sample_source_topleft",
    "sample_target_center",
    "to_bytes",
    "write_ppm",
    "write_preview_grid",
]
