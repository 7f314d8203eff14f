"""Parser for the solver's binary field snapshots.

Implements the wire format independently of the solver package:

    bytes 0..3    magic "HJLS"
    bytes 4..7    format version (u32 little-endian, currently 1)
    bytes 8..11   number of axes (u32)
    bytes 12..15  reserved (u32)
    then          one u64 node count per axis
    then          row-major float64 node values

Header mismatches are hard errors; a renderer must never guess at bytes.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAGIC = b"HJLS"
SUPPORTED_VERSION = 1
_HEADER = struct.Struct("<4sIII")


class SnapshotFormatError(ValueError):
    """Raised when a snapshot file does not follow the wire format."""


@dataclass(frozen=True)
class GridInfo:
    """Axis geometry recovered from the run's meta.json sidecar."""

    mins: tuple[float, ...]
    spacings: tuple[float, ...]


def load_snapshot(path: str | Path) -> np.ndarray:
    """Read one snapshot; returns the row-major float64 value array."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise SnapshotFormatError(
            f"{path}: file too short for the 16-byte header ({len(raw)} bytes)"
        )
    magic, version, dim, _ = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SnapshotFormatError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != SUPPORTED_VERSION:
        raise SnapshotFormatError(f"{path}: unsupported format version {version}")
    if dim < 1 or dim > 16:
        raise SnapshotFormatError(f"{path}: implausible axis count {dim}")
    counts_end = _HEADER.size + 8 * dim
    if len(raw) < counts_end:
        raise SnapshotFormatError(f"{path}: truncated axis counts")
    counts = struct.unpack_from(f"<{dim}Q", raw, _HEADER.size)
    expected = counts_end + 8 * int(np.prod(counts))
    if len(raw) != expected:
        raise SnapshotFormatError(
            f"{path}: expected {expected} bytes for shape {counts}, got {len(raw)}"
        )
    values = np.frombuffer(raw, dtype="<f8", offset=counts_end)
    return values.reshape(tuple(int(c) for c in counts))


def load_run(snapshot_dir: str | Path) -> list[tuple[Path, float | None]]:
    """List a run's snapshots with their timestamps.

    Uses the meta.json sidecar when present (file order and times straight
    from the run); otherwise falls back to sorted ``value_*.f64`` files with
    unknown times.
    """
    directory = Path(snapshot_dir)
    meta_path = directory / "meta.json"
    if meta_path.is_file():
        meta = json.loads(meta_path.read_text())
        names = meta.get("snapshots", [])
        times = meta.get("times", [])
        if names:
            padded = list(times) + [None] * (len(names) - len(times))
            return [(directory / n, padded[i]) for i, n in enumerate(names)]
    files = sorted(directory.glob("value_*.f64"))
    return [(p, None) for p in files]


def load_grid_info(snapshot_dir: str | Path, dim: int) -> GridInfo:
    """Axis origins and spacings from meta.json; index space when absent."""
    meta_path = Path(snapshot_dir) / "meta.json"
    if meta_path.is_file():
        grid = json.loads(meta_path.read_text()).get("grid", {})
        mins = grid.get("mins")
        spacings = grid.get("spacings")
        if mins and spacings and len(mins) == dim and len(spacings) == dim:
            return GridInfo(tuple(float(m) for m in mins),
                            tuple(float(s) for s in spacings))
    return GridInfo((0.0,) * dim, (1.0,) * dim)
