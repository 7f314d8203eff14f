"""Batch renderer: one PNG per snapshot in a run directory.

Usage: ``hjviz render <snapshot_dir> -o <out_dir> [--level L]``.
Exit codes: 0 success, 1 unreadable/ill-formed snapshot or render failure,
2 bad usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .reader import SnapshotFormatError, load_grid_info, load_run, load_snapshot
from .render import render_snapshot


def render_directory(snapshot_dir: str | Path, out_dir: str | Path,
                     level: float = 0.0) -> list[Path]:
    """Render every snapshot of a run; returns the written image paths."""
    entries = load_run(snapshot_dir)
    if not entries:
        raise FileNotFoundError(f"no snapshots found in {snapshot_dir}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for index, (path, t) in enumerate(entries):
        values = load_snapshot(path)
        grid = load_grid_info(snapshot_dir, values.ndim)
        title = f"t = {t:.4g}" if t is not None else f"snapshot {index}"
        target = out / (path.stem + ".png")
        render_snapshot(values, grid, level, target, title)
        written.append(target)
    return written


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="hjviz",
                                     description="snapshot level-set renderer")
    sub = parser.add_subparsers(dest="command", required=True)
    render = sub.add_parser("render", help="render a snapshot directory to PNGs")
    render.add_argument("snapshot_dir", help="directory with value_*.f64 files")
    render.add_argument("-o", "--out", required=True, help="output directory")
    render.add_argument("--level", type=float, default=0.0,
                        help="level-set value to draw (default 0)")
    args = parser.parse_args(argv)

    try:
        written = render_directory(args.snapshot_dir, args.out, args.level)
    except (SnapshotFormatError, FileNotFoundError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {len(written)} images to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
