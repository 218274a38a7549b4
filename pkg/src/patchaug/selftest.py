"""Embedded brute-force oracle suites behind the `selftest` CLI command.

Each check recomputes an expected result by an independent route
(per-pixel enumeration, brute-force iteration, byte round trips) and
compares it against the library. The optional `corrupt` hook makes a
named check compare against a deliberately wrong oracle, as a negative
control proving the checks can fail.
"""

from __future__ import annotations

import tempfile
from pathlib import Path

import numpy as np

from .image import ImageBuf, from_bytes, to_bytes
from .patches import clip_square, sample_pairing
from .schedule import Mode, pairing_epoch_count, preset, dump_table
from .dataset import read_ppm, write_ppm


def _membership_rect(center_row, center_col, extent, height, width, shift=0):
    """Per-pixel oracle: evaluate the square-membership predicate at every pixel."""
    half = extent // 2 + shift
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]
    in_rows = (center_row - half <= rows) & (rows < center_row - half + extent)
    in_cols = (center_col - half <= cols) & (cols < center_col - half + extent)
    return in_rows & in_cols


def check_geometry_exhaustive(corrupt: bool = False) -> tuple[bool, str]:
    """clip_square vs per-pixel membership for all small images and extents."""
    shift = 1 if corrupt else 0
    for height in range(1, 9):
        for width in range(1, 9):
            for extent in range(1, 9):
                for cr in range(height):
                    for cc in range(width):
                        rect = clip_square(cr, cc, extent, height, width)
                        got = np.zeros((height, width), dtype=bool)
                        got[rect.row_start:rect.row_end, rect.col_start:rect.col_end] = True
                        want = _membership_rect(cr, cc, extent, height, width, shift)
                        if not np.array_equal(got, want):
                            return False, f"mismatch at center ({cr},{cc}) extent {extent} on {height}x{width}"
    return True, "all centers, images to 8x8, extents 1..8"


def check_schedule_counts() -> tuple[bool, str]:
    """Preset mode counts: brute-force iteration vs closed form vs constants."""
    expected = {
        "sp-cifar": (720, {Mode.PLAIN: 480}),
        "cp-1to1": (450, {Mode.COPYOUT: 750}),
        "cp-3to1": (675, {Mode.COPYOUT: 525}),
        "cp-1to1-noFT": (550, {Mode.COPYOUT: 650}),
    }
    for name, (pairing, others) in expected.items():
        plan = preset(name)
        table = dump_table(plan)
        if table.pairing_epochs != pairing:
            return False, f"{name}: brute-force pairing count {table.pairing_epochs} != {pairing}"
        if pairing_epoch_count(plan) != pairing:
            return False, f"{name}: closed form disagrees with {pairing}"
        for mode, count in others.items():
            if table.mode_counts.get(mode, 0) != count:
                return False, f"{name}: {mode.value} count {table.mode_counts.get(mode, 0)} != {count}"
    return True, "4 presets, brute force == closed form == expected"


def check_byte_roundtrip() -> tuple[bool, str]:
    """byte -> float -> byte is the identity for every byte value."""
    for b in range(256):
        img = from_bytes(bytes([b] * 3), 1, 1, 3)
        back = to_bytes(img)
        if back != bytes([b] * 3):
            return False, f"byte {b} round-tripped to {back!r}"
    return True, "all 256 byte values"


def check_ppm_roundtrip() -> tuple[bool, str]:
    """write_ppm then read_ppm reproduces pixels bit-exactly."""
    rng = np.random.default_rng(2024)
    img = ImageBuf(
        from_bytes(rng.integers(0, 256, 5 * 7 * 3, dtype=np.uint8).tobytes(), 5, 7, 3).data
    )
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "roundtrip.ppm"
        write_ppm(img, path)
        back = read_ppm(path)
    if to_bytes(back) != to_bytes(img):
        return False, "pixel bytes changed across PPM round trip"
    return True, "5x7 random image, bit-exact"


def check_pairing_algebra() -> tuple[bool, str]:
    """pair(x,x) == x, commutativity, range, and the element-wise oracle."""
    rng = np.random.default_rng(99)
    for _ in range(25):
        a = ImageBuf(rng.random((8, 8, 3), dtype=np.float32))
        b = ImageBuf(rng.random((8, 8, 3), dtype=np.float32))
        if sample_pairing(a, a) != a:
            return False, "pair(x, x) != x"
        ab, ba = sample_pairing(a, b), sample_pairing(b, a)
        if ab != ba:
            return False, "pairing is not commutative"
        if float(ab.data.min()) < 0.0 or float(ab.data.max()) > 1.0:
            return False, "pairing left [0, 1]"
        oracle = (a.data + b.data) / np.float32(2.0)
        if not np.array_equal(ab.data, oracle):
            return False, "pairing differs from element-wise average"
    return True, "25 random pairs, exact"


CHECKS = (
    ("geometry-exhaustive", check_geometry_exhaustive),
    ("schedule-counts", check_schedule_counts),
    ("byte-roundtrip", check_byte_roundtrip),
    ("ppm-roundtrip", check_ppm_roundtrip),
    ("pairing-algebra", check_pairing_algebra),
)


def run_all(corrupt: str | None = None) -> bool:
    """Run every check, print one pass/fail line each; True iff all passed."""
    all_ok = True
    for name, fn in CHECKS:
        if name == "geometry-exhaustive":
            ok, detail = fn(corrupt == name)
        else:
            ok, detail = fn()
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        all_ok &= ok
    return all_ok
