"""Binary snapshot format for field checkpoints.

Layout (all little-endian):

    bytes 0..3    magic "HJLS"
    bytes 4..7    format version (u32, currently 1)
    bytes 8..11   number of axes (u32)
    bytes 12..15  reserved (u32, zero)
    then          one u64 node count per axis
    then          row-major float64 node values

Self-describing and parseable from any language; round trips are bit-exact.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .grid import Grid, ScalarField

MAGIC = b"HJLS"
VERSION = 1
_HEADER = struct.Struct("<4sIII")


def export_field(f: ScalarField, g: Grid, path: str | Path) -> None:
    """Write one field to ``path`` in the snapshot format."""
    if not f.matches(g):
        raise ValueError(f"field shape {f.grid_shape} does not match grid {g.counts}")
    dim = len(f.grid_shape)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, dim, 0))
        fh.write(struct.pack(f"<{dim}Q", *f.grid_shape))
        fh.write(np.ascontiguousarray(f.values, dtype="<f8").tobytes())


def import_field(path: str | Path) -> tuple[ScalarField, tuple[int, ...]]:
    """Read a snapshot back; returns the field and its grid shape."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(
            f"{path}: truncated header, expected at least {_HEADER.size} bytes, "
            f"got {len(raw)}"
        )
    magic, version, dim, _ = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    counts_size = 8 * dim
    if len(raw) < _HEADER.size + counts_size:
        raise ValueError(
            f"{path}: truncated axis counts, expected {_HEADER.size + counts_size} "
            f"bytes, got {len(raw)}"
        )
    counts = struct.unpack_from(f"<{dim}Q", raw, _HEADER.size)
    expected = _HEADER.size + counts_size + 8 * int(np.prod(counts))
    if len(raw) != expected:
        raise ValueError(
            f"{path}: expected {expected} bytes for shape {counts}, got {len(raw)}"
        )
    values = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size + counts_size)
    shape = tuple(int(c) for c in counts)
    return ScalarField(values.reshape(shape)), shape
