"""Command-line interface: augment runs, previews, schedule dumps, self tests.

Every run requires an explicit --seed and prints its fully resolved
configuration, so any output can be reproduced from the log alone.
Exit codes: 0 success, 1 check failure, 2 usage or contract error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import selftest as selftest_mod
from .basic import BasicAugConfig
from .buffer import BufferMode, SourceBuffer
from .dataset import LabeledImage, read_cifar10_batch, read_ppm, write_ppm, write_preview_grid
from .errors import ContractError, MalformedDataError
from .pipeline import (
    Method,
    PipelineConfig,
    augment_epoch,
    augment_one,
    effective_mode,
    method_from_name,
)
from .schedule import PRESETS, PhasePlan, dump_table, mode_from_name, preset, write_csv

_METHOD_NAMES = [m.value for m in Method]
_PRESET_NAMES = sorted(PRESETS)

# Methods that run on a phase plan and their default preset.
_DEFAULT_PRESET = {Method.SAMPLE_PAIRING: "sp-cifar", Method.COPY_PAIRING: "cp-1to1"}


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_dataset(path: Path, limit: int | None) -> list[LabeledImage]:
    """Load a CIFAR-10 binary batch file, or a directory of PPM images."""
    if path.is_dir():
        files = sorted(path.glob("*.ppm"))
        if not files:
            raise MalformedDataError(f"{path}: no .ppm files found")
        entries = [LabeledImage(0, read_ppm(f)) for f in files]
    else:
        entries = read_cifar10_batch(path)
    return entries[:limit] if limit is not None else entries


def _build_config(method, seed, extent, fill, preset_name, buffer_capacity, batch_size) -> PipelineConfig:
    m = method_from_name(method)
    plan = None
    if m in _DEFAULT_PRESET:
        plan = preset(preset_name or _DEFAULT_PRESET[m])
    elif preset_name:
        raise ContractError(f"--preset only applies to scheduled methods, not {method}")
    return PipelineConfig(
        method=m,
        seed=seed,
        extent=extent,
        fill=fill,
        plan=plan,
        basic=BasicAugConfig(),
        buffer_capacity=buffer_capacity,
        buffer_mode=BufferMode.BUFFERED if buffer_capacity > 0 else BufferMode.NO_BUFFER,
        batch_size=batch_size,
    )


def _echo_config(command: str, **kv) -> None:
    pairs = " ".join(f"{k}={v}" for k, v in kv.items())
    click.echo(f"{command}-config: {pairs}")


@click.group()
def main() -> None:
    """Deterministic patch-copy image augmentation."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, path_type=Path),
              help="CIFAR-10 binary batch file or directory of PPM images.")
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path),
              help="Output directory; images land in epoch{E}/img{I}.ppm.")
@click.option("--method", required=True, type=click.Choice(_METHOD_NAMES))
@click.option("--seed", required=True, type=int, help="Random seed (required for reproducibility).")
@click.option("--extent", default=16, show_default=True, type=int, help="Square patch side length.")
@click.option("--fill", default=0.5, show_default=True, type=float, help="Cutout fill value in [0,1].")
@click.option("--preset", "preset_name", type=click.Choice(_PRESET_NAMES), default=None,
              help="Phase plan for the scheduled methods.")
@click.option("--epochs", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--buffer", "buffer_capacity", default=256, show_default=True, type=click.IntRange(min=0),
              help="Source buffer capacity; 0 selects the no-buffer ablation.")
@click.option("--batch-size", default=128, show_default=True, type=click.IntRange(min=1))
@click.option("--limit", default=None, type=click.IntRange(min=1), help="Cap on dataset size.")
@click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1),
              help="Parallel workers; output is byte-identical for any value.")
def augment(input_path, out_dir, method, seed, extent, fill, preset_name, epochs,
            buffer_capacity, batch_size, limit, workers) -> None:
    """Stream epochs of augmented images to an output tree of PPM files."""
    try:
        cfg = _build_config(method, seed, extent, fill, preset_name, buffer_capacity, batch_size)
        dataset = _load_dataset(input_path, limit)
        if cfg.plan is not None and epochs > cfg.plan.total_epochs:
            raise ContractError(
                f"--epochs {epochs} exceeds the plan's {cfg.plan.total_epochs} total epochs"
            )
        _echo_config(
            "augment", method=method, seed=seed, extent=extent, fill=fill,
            preset=preset_name or _DEFAULT_PRESET.get(cfg.method, "-"), epochs=epochs,
            buffer=buffer_capacity, batch_size=batch_size, limit=limit or "none",
            workers=workers, images=len(dataset), input=input_path, out=out_dir,
        )
        buffer = cfg.make_buffer()
        for epoch in range(epochs):
            click.echo(f"epoch {epoch}: mode={effective_mode(cfg, epoch).value}")
            epoch_dir = out_dir / f"epoch{epoch}"
            epoch_dir.mkdir(parents=True, exist_ok=True)
            index = 0
            for batch in augment_epoch(cfg, dataset, epoch, buffer=buffer, workers=workers):
                for entry in batch:
                    write_ppm(entry.image, epoch_dir / f"img{index}.ppm")
                    index += 1
    except (ContractError, MalformedDataError) as exc:
        _fail(str(exc), 2)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path),
              help="Output PPM file for the grid.")
@click.option("--method", required=True, type=click.Choice(_METHOD_NAMES))
@click.option("--seed", required=True, type=int)
@click.option("--count", default=8, show_default=True, type=click.IntRange(min=1),
              help="Number of images in the grid.")
@click.option("--columns", default=4, show_default=True, type=click.IntRange(min=1))
@click.option("--extent", default=16, show_default=True, type=int)
@click.option("--fill", default=0.5, show_default=True, type=float)
@click.option("--preset", "preset_name", type=click.Choice(_PRESET_NAMES), default=None)
@click.option("--epoch", default=0, show_default=True, type=click.IntRange(min=0),
              help="Epoch at which to evaluate a scheduled method's mode.")
@click.option("--buffer", "buffer_capacity", default=256, show_default=True, type=click.IntRange(min=0))
def preview(input_path, out_path, method, seed, count, columns, extent, fill,
            preset_name, epoch, buffer_capacity) -> None:
    """Write one grid of augmented samples (first --count images, file order)."""
    try:
        cfg = _build_config(method, seed, extent, fill, preset_name, buffer_capacity, batch_size=count)
        dataset = _load_dataset(input_path, count)
        if len(dataset) < count:
            raise ContractError(f"dataset provides {len(dataset)} images, need {count}")
        _echo_config(
            "preview", method=method, seed=seed, count=count, columns=columns,
            extent=extent, fill=fill, epoch=epoch, buffer=buffer_capacity,
            input=input_path, out=out_path,
        )
        buffer = cfg.make_buffer()
        raw = [e.image for e in dataset] if cfg.buffer_mode is BufferMode.NO_BUFFER else None
        outs = [
            augment_one(cfg, buffer, dataset[i].image, epoch, i, raw)
            for i in range(count)
        ]
        out_path.parent.mkdir(parents=True, exist_ok=True)
        write_preview_grid(outs, columns, out_path)
        click.echo(f"wrote {out_path}")
    except (ContractError, MalformedDataError) as exc:
        _fail(str(exc), 2)


@main.command()
@click.option("--preset", "preset_name", type=click.Choice(_PRESET_NAMES), default=None)
@click.option("--phase1", type=click.IntRange(min=0), default=None)
@click.option("--phase2", type=click.IntRange(min=0), default=None)
@click.option("--on", "on_epochs", type=click.IntRange(min=0), default=None)
@click.option("--off", "off_epochs", type=click.IntRange(min=0), default=None)
@click.option("--phase3", type=click.IntRange(min=0), default=None)
@click.option("--base", "base_name", type=str, default=None,
              help="Base mode used when pairing is off (plain/copyout/cutout).")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="CSV destination; stdout when omitted.")
@click.option("--figure", "figure_path", type=click.Path(path_type=Path), default=None,
              help="Also render the plan as a timeline figure (PNG).")
def schedule(preset_name, phase1, phase2, on_epochs, off_epochs, phase3, base_name,
             out_path, figure_path) -> None:
    """Emit the per-epoch mode table as CSV, plus aggregate counts."""
    explicit = [phase1, phase2, on_epochs, off_epochs, phase3]
    try:
        if preset_name is not None:
            if any(v is not None for v in explicit) or base_name is not None:
                raise ContractError("use either --preset or explicit phase flags, not both")
            plan = preset(preset_name)
        else:
            if phase1 is None or phase2 is None or phase3 is None or base_name is None:
                raise ContractError("explicit plans need --phase1 --phase2 --phase3 --base")
            if phase2 > 0 and (on_epochs is None or off_epochs is None):
                raise ContractError("--on and --off are required when --phase2 > 0")
            plan = PhasePlan(
                phase1, phase2,
                on_epochs if on_epochs is not None else 1,
                off_epochs if off_epochs is not None else 0,
                phase3, base_mode=mode_from_name(base_name),
            )
        table = dump_table(plan)
        summary = ", ".join(f"{m.value}={n}" for m, n in sorted(table.mode_counts.items(), key=lambda kv: kv[0].value))
        if out_path is not None:
            with open(out_path, "w", encoding="ascii") as fh:
                write_csv(table, fh)
            click.echo(f"epochs={plan.total_epochs} {summary}")
        else:
            write_csv(table, sys.stdout)
            click.echo(f"epochs={plan.total_epochs} {summary}", err=True)
        if figure_path is not None:
            from .report import render_schedule_figure

            render_schedule_figure(plan, figure_path)
            click.echo(f"wrote figure {figure_path}", err=True if out_path is None else False)
    except (ContractError, MalformedDataError) as exc:
        _fail(str(exc), 2)


@main.command()
@click.option("--corrupt", type=str, default=None, hidden=True,
              help="Negative-control hook: corrupt the named check's oracle.")
def selftest(corrupt) -> None:
    """Run the embedded brute-force oracle suites; exit 0 only if all pass."""
    ok = selftest_mod.run_all(corrupt=corrupt)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
