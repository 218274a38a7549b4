"""Rendered reports: schedule timeline figures saved next to the CSV tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .schedule import Mode, PhasePlan, dump_table

_MODE_COLORS = {
    Mode.PLAIN: "#9e9e9e",
    Mode.COPYOUT: "#1f77b4",
    Mode.CUTOUT: "#2ca02c",
    Mode.SAMPLE_PAIRING: "#d62728",
}


def _mode_runs(plan: PhasePlan) -> list[tuple[int, int, Mode]]:
    """Contiguous (start, length, mode) runs of the plan's epoch table."""
    runs: list[tuple[int, int, Mode]] = []
    for epoch, mode in dump_table(plan).rows:
        if runs and runs[-1][2] is mode:
            start, length, _ = runs[-1]
            runs[-1] = (start, length + 1, mode)
        else:
            runs.append((epoch, 1, mode))
    return runs


def render_schedule_figure(plan: PhasePlan, path: str | Path) -> None:
    """Save a timeline of the per-epoch modes, with phase boundaries marked."""
    runs = _mode_runs(plan)
    lanes = [m for m in Mode if any(r[2] is m for r in runs)]
    lane_index = {m: i for i, m in enumerate(lanes)}

    fig, ax = plt.subplots(figsize=(10, 1.0 + 0.6 * len(lanes)))
    for start, length, mode in runs:
        ax.broken_barh(
            [(start, length)],
            (lane_index[mode] - 0.35, 0.7),
            facecolors=_MODE_COLORS[mode],
            edgecolor="none",
        )
    for boundary in (plan.phase1_epochs, plan.phase1_epochs + plan.phase2_epochs):
        if 0 < boundary < plan.total_epochs:
            ax.axvline(boundary, color="black", linewidth=0.8, linestyle="--", alpha=0.6)

    ax.set_yticks(range(len(lanes)))
    ax.set_yticklabels([m.value for m in lanes])
    ax.set_xlim(0, plan.total_epochs)
    ax.set_xlabel("epoch")
    ax.set_title(
        f"phases {plan.phase1_epochs}/{plan.phase2_epochs}/{plan.phase3_epochs}, "
        f"cadence {plan.on_epochs}:{plan.off_epochs}, base {plan.base_mode.value}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
