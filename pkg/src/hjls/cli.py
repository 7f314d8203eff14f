"""Experiment runner: configure a problem, solve it, serialize snapshots.

Configs are JSON with a top-level ``problem`` discriminator:

    {"problem": "rockets", "resolution": 50, "bound": 64.0, "horizon": 2.5,
     "global_steps": 11, "scheme": "eno2", "cfl": 0.5, "capture_radius": 1.5,
     "acceleration": 1.0, "gravity": 32.0, "u_min": -1.0, "u_max": 1.0}

    {"problem": "advection", "resolution": 80, "speed": 1.0, "horizon": 1.0,
     "global_steps": 4, "scheme": "first", "cfl": 0.5}

Every key has the default shown above; command-line flags override the file.
Outputs: one ``value_NNNN.f64`` snapshot per checkpoint (initial state
included), ``meta.json`` with the run provenance, and ``timings.json`` with
wall-clock totals.  Exit codes: 0 success, 1 solver failure, 2 bad
usage/config.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Any

import numpy as np

from . import selftest as _selftest_mod
from .grid import Grid, ScalarField, create_grid
from .integrator import IntegratorOptions, ode_cfl_3
from .reachability import (
    ReachProblem,
    RocketParams,
    rockets_term_config,
    solve_brt,
)
from .shapes import cylinder
from .snapshot import export_field
from .spatial import GHOST_WIDTH
from .term import advection_term_config, term_lax_friedrichs

_DEFAULTS: dict[str, dict[str, Any]] = {
    "rockets": {
        "resolution": 50,
        "bound": 64.0,
        "horizon": 2.5,
        "global_steps": 11,
        "scheme": "eno2",
        "cfl": 0.5,
        "capture_radius": 1.5,
        "acceleration": 1.0,
        "gravity": 32.0,
        "u_min": -1.0,
        "u_max": 1.0,
    },
    "advection": {
        "resolution": 80,
        "speed": 1.0,
        "horizon": 1.0,
        "global_steps": 4,
        "scheme": "first",
        "cfl": 0.5,
    },
}


class ConfigError(Exception):
    """Configuration or usage problem; maps to exit status 2."""


def load_config(config_path: str | Path, overrides: dict[str, Any] | None = None) -> dict[str, Any]:
    """Read, default-fill, override, and validate a run configuration."""
    path = Path(config_path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ConfigError(
            f"{path}: invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from err
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    problem = raw.get("problem")
    if problem not in _DEFAULTS:
        raise ConfigError(
            f"{path}: unknown problem {problem!r}; pick from {sorted(_DEFAULTS)}"
        )
    cfg = dict(_DEFAULTS[problem])
    cfg["problem"] = problem
    for key, value in raw.items():
        if key != "problem" and key not in cfg:
            raise ConfigError(f"{path}: unknown config key {key!r} for problem {problem!r}")
        cfg[key] = value
    for key, value in (overrides or {}).items():
        if value is not None:
            cfg[key] = value
    _validate(cfg)
    return cfg


def _validate(cfg: dict[str, Any]) -> None:
    scheme = cfg["scheme"]
    if scheme not in GHOST_WIDTH:
        raise ConfigError(f"unknown scheme {scheme!r}; pick from {sorted(GHOST_WIDTH)}")
    n = int(cfg["resolution"])
    width = GHOST_WIDTH[scheme]
    # Periodic axes wrap their ghost cells, so the axis must comfortably
    # exceed the stencil span: at least 2*width + 3 nodes.
    floor = 2 * width + 3
    if n < floor:
        raise ConfigError(
            f"scheme {scheme!r} needs at least {floor} nodes per periodic axis "
            f"(ghost width {width}), got resolution {n}"
        )
    if int(cfg["global_steps"]) < 1:
        raise ConfigError("global_steps must be at least 1")
    if float(cfg["horizon"]) <= 0:
        raise ConfigError("horizon must be positive")
    if not 0.0 < float(cfg["cfl"]) <= 1.0:
        raise ConfigError(f"cfl must be in (0, 1], got {cfg['cfl']}")


def _write_meta(out: Path, cfg: dict[str, Any], g: Grid, times: list[float],
                files: list[str]) -> None:
    meta = {
        "format": {"magic": "HJLS", "version": 1},
        "problem": cfg["problem"],
        "config": {k: v for k, v in cfg.items() if k != "problem"},
        "grid": {
            "mins": list(map(float, g.mins)),
            "maxs": list(map(float, g.maxs)),
            "counts": list(g.counts),
            "spacings": list(map(float, g.spacings)),
            "periodic_axes": [i for i in range(g.dim) if g.is_periodic(i)],
        },
        "times": times,
        "snapshots": files,
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _write_timings(out: Path, total: float, per_interval: list[float]) -> None:
    timings = {
        "global_seconds": total,
        "intervals": len(per_interval),
        "mean_step_seconds": total / len(per_interval) if per_interval else 0.0,
        "per_interval_seconds": per_interval,
    }
    (out / "timings.json").write_text(json.dumps(timings, indent=2) + "\n")


def _snapshot_name(k: int) -> str:
    return f"value_{k:04d}.f64"


def _run_rockets(cfg: dict[str, Any], out: Path) -> None:
    n = int(cfg["resolution"])
    b = float(cfg["bound"])
    g = create_grid(
        mins=(-b, -b, -math.pi),
        maxs=(b, b, math.pi),
        counts=(n, n, n),
        periodic_axes={2},
    )
    params = RocketParams(
        a=float(cfg["acceleration"]),
        grav=float(cfg["gravity"]),
        capture_radius=float(cfg["capture_radius"]),
        u_min=float(cfg["u_min"]),
        u_max=float(cfg["u_max"]),
    )
    target = cylinder(g, ignored_axis=2, center=(0.0, 0.0, 0.0), radius=params.capture_radius)
    problem = ReachProblem(
        grid=g,
        target=target,
        params=params,
        term_config=rockets_term_config(params, scheme=cfg["scheme"]),
        horizon=float(cfg["horizon"]),
        global_steps=int(cfg["global_steps"]),
    )
    opts = IntegratorOptions(cfl_factor=float(cfg["cfl"]))

    files = [_snapshot_name(0)]
    export_field(target, g, out / files[0])
    interval_times: list[float] = []
    last = [time.perf_counter()]

    def checkpoint(k: int, t: float, snap: ScalarField) -> None:
        now = time.perf_counter()
        interval_times.append(now - last[0])
        last[0] = now
        name = _snapshot_name(k)
        export_field(snap, g, out / name)
        files.append(name)

    start = time.perf_counter()
    last[0] = start
    result = solve_brt(problem, opts, progress=checkpoint)
    total = time.perf_counter() - start
    _write_meta(out, cfg, g, list(result.times), files)
    _write_timings(out, total, interval_times)


def _run_advection(cfg: dict[str, Any], out: Path) -> None:
    n = int(cfg["resolution"])
    g = create_grid(mins=(0.0,), maxs=(2.0 * math.pi,), counts=(n,), periodic_axes={0})
    v = ScalarField(np.sin(g.axis_nodes[0]))
    term_cfg = advection_term_config([float(cfg["speed"])], scheme=cfg["scheme"])
    opts = IntegratorOptions(cfl_factor=float(cfg["cfl"]))

    def rhs(t, y, scheme_data):
        return term_lax_friedrichs(t, y, scheme_data, g)

    files = [_snapshot_name(0)]
    export_field(v, g, out / files[0])
    times = [0.0]
    interval_times: list[float] = []
    horizon = float(cfg["horizon"])
    steps = int(cfg["global_steps"])
    start = time.perf_counter()
    for k in range(1, steps + 1):
        tick = time.perf_counter()
        t1 = horizon * k / steps
        res = ode_cfl_3(rhs, (times[-1], t1), v, opts, term_cfg)
        v = res.y_final
        interval_times.append(time.perf_counter() - tick)
        name = _snapshot_name(k)
        export_field(v, g, out / name)
        files.append(name)
        times.append(t1)
    total = time.perf_counter() - start
    _write_meta(out, cfg, g, times, files)
    _write_timings(out, total, interval_times)


def run_experiment(config_path: str | Path, out_dir: str | Path,
                   overrides: dict[str, Any] | None = None) -> int:
    """Execute one configured run; returns the process exit status."""
    try:
        cfg = load_config(config_path, overrides)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        print(f"error: cannot create output directory {out}: {err}", file=sys.stderr)
        return 2
    try:
        if cfg["problem"] == "rockets":
            _run_rockets(cfg, out)
        else:
            _run_advection(cfg, out)
    except (RuntimeError, ValueError, OSError) as err:
        print(f"solver error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {int(cfg['global_steps']) + 1} snapshots to {out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hjls",
        description="Hamilton-Jacobi level-set solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run a configured experiment")
    solve.add_argument("--config", required=True, help="path to a JSON config")
    solve.add_argument("--out", required=True, help="output directory for snapshots")
    solve.add_argument("--steps", type=int, default=None, help="override global_steps")
    solve.add_argument("--cfl", type=float, default=None, help="override the CFL factor")
    solve.add_argument(
        "--scheme",
        choices=sorted(GHOST_WIDTH),
        default=None,
        help="override the derivative scheme",
    )
    solve.add_argument("--resolution", type=int, default=None, help="override nodes per axis")

    sub.add_parser("selftest", help="run the built-in invariant checks")

    args = parser.parse_args(argv)
    if args.command == "selftest":
        return _selftest_mod.run()
    overrides = {
        "global_steps": args.steps,
        "cfl": args.cfl,
        "scheme": args.scheme,
        "resolution": args.resolution,
    }
    return run_experiment(args.config, args.out, overrides)


if __name__ == "__main__":
    sys.exit(main())
