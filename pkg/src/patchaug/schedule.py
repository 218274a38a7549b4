"""Three-phase epoch scheduler for the pairing methods.

Pairing-based training runs in three phases: an opening stretch with
pairing disabled, a long middle stretch alternating pairing on and off in
a fixed on:off cadence, and a closing fine-tune stretch with pairing
disabled again. Whenever pairing is off the schedule falls back to the
plan's base mode: plain for classic sample pairing, copyout for the
combined method (which fills every pairing-off epoch with copyout).
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from typing import TextIO

from .errors import ContractError


class Mode(enum.Enum):
    """Augmentation behavior active at a given epoch."""

    PLAIN = "plain"
    COPYOUT = "copyout"
    CUTOUT = "cutout"
    SAMPLE_PAIRING = "samplepairing"


@dataclass(frozen=True)
class PhasePlan:
    """Epoch counts for the three phases plus the phase-2 on:off cadence.

    phase3_epochs = 0 disables fine-tuning: the phase-2 alternation then
    runs through the final epoch.
    """

    phase1_epochs: int
    phase2_epochs: int
    on_epochs: int
    off_epochs: int
    phase3_epochs: int
    base_mode: Mode = Mode.PLAIN

    def __post_init__(self):
        if min(self.phase1_epochs, self.phase2_epochs, self.phase3_epochs) < 0:
            raise ContractError("phase lengths must be >= 0")
        if self.off_epochs < 0:
            raise ContractError(f"off_epochs must be >= 0, got {self.off_epochs}")
        if self.phase2_epochs > 0 and self.on_epochs < 1:
            raise ContractError("on_epochs must be >= 1 when phase 2 is nonempty")
        if self.base_mode is Mode.SAMPLE_PAIRING:
            raise ContractError("base_mode is the pairing-off mode; it cannot be samplepairing")

    @property
    def total_epochs(self) -> int:
        return self.phase1_epochs + self.phase2_epochs + self.phase3_epochs


def mode_for_epoch(plan: PhasePlan, epoch: int) -> Mode:
    """Mode active at `epoch`. Phase 2 starts with pairing ON.

    Partial trailing cycles in phase 2 are truncated mid-cycle, so the
    cadence is defined for any phase length, not just exact multiples.
    """
    if not (0 <= epoch < plan.total_epochs):
        raise ContractError(f"epoch {epoch} outside [0, {plan.total_epochs})")
    if epoch < plan.phase1_epochs:
        return plan.base_mode
    if epoch >= plan.phase1_epochs + plan.phase2_epochs:
        return plan.base_mode
    k = (epoch - plan.phase1_epochs) % (plan.on_epochs + plan.off_epochs)
    return Mode.SAMPLE_PAIRING if k < plan.on_epochs else plan.base_mode


@dataclass(frozen=True)
class ScheduleTable:
    """Full per-epoch mode table with aggregate counts."""

    rows: tuple[tuple[int, Mode], ...]
    mode_counts: dict[Mode, int] = field(default_factory=dict)

    @property
    def pairing_epochs(self) -> int:
        return self.mode_counts.get(Mode.SAMPLE_PAIRING, 0)

    @property
    def base_epochs(self) -> int:
        return sum(n for mode, n in self.mode_counts.items() if mode is not Mode.SAMPLE_PAIRING)


def dump_table(plan: PhasePlan) -> ScheduleTable:
    """Materialize (epoch, mode) for every epoch of the plan."""
    rows = tuple((e, mode_for_epoch(plan, e)) for e in range(plan.total_epochs))
    counts: dict[Mode, int] = {}
    for _, mode in rows:
        counts[mode] = counts.get(mode, 0) + 1
    return ScheduleTable(rows=rows, mode_counts=counts)


def pairing_epoch_count(plan: PhasePlan) -> int:
    """Closed-form number of pairing-on epochs (cross-check for dump_table)."""
    if plan.phase2_epochs == 0:
        return 0
    cycle = plan.on_epochs + plan.off_epochs
    full, partial = divmod(plan.phase2_epochs, cycle)
    return plan.on_epochs * full + min(partial, plan.on_epochs)


def write_csv(table: ScheduleTable, stream: TextIO) -> None:
    """Serialize as `epoch,mode` rows; modes use their lowercase names."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["epoch", "mode"])
    for epoch, mode in table.rows:
        writer.writerow([epoch, mode.value])


# Experiment configurations shipped as named presets. The pairing methods
# train for 1200 epochs: 100 warm-up, 900 alternating, 200 fine-tune. The
# no-fine-tune variant extends the alternation through the final epoch.
PRESETS: dict[str, PhasePlan] = {
    "sp-cifar": PhasePlan(100, 900, 8, 2, 200, base_mode=Mode.PLAIN),
    "cp-1to1": PhasePlan(100, 900, 1, 1, 200, base_mode=Mode.COPYOUT),
    "cp-3to1": PhasePlan(100, 900, 3, 1, 200, base_mode=Mode.COPYOUT),
    "cp-1to1-noFT": PhasePlan(100, 1100, 1, 1, 0, base_mode=Mode.COPYOUT),
}


def preset(name: str) -> PhasePlan:
    """Look up a shipped plan by name."""
    try:
        return PRESETS[name]
    except KeyError:
        raise ContractError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def mode_from_name(name: str) -> Mode:
    """Parse a lowercase mode name, raising on unknown values."""
    by_value = {m.value: m for m in Mode}
    if name not in by_value:
        raise ContractError(f"unknown mode {name!r}; choose from {sorted(by_value)}")
    return by_value[name]
