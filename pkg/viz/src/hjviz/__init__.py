"""Offline renderer for hjls level-set snapshots."""
from .reader import GridInfo, SnapshotFormatError, load_grid_info, load_run, load_snapshot
from .render import extract_isosurface, render_snapshot

__version__ = "0.1.0"

__all__ = [
    "GridInfo",
    "SnapshotFormatError",
    "extract_isosurface",
    "load_grid_info",
    "load_run",
    "load_snapshot",
    "render_snapshot",
]
