"""Built-in invariant checks behind ``hjls selftest``.

A handful of fast end-to-end sanity checks, one line of output each.  These
are not a replacement for the test suite; they exist so an installed binary
can vouch for itself without a checkout.
"""
from __future__ import annotations

import math
import tempfile
from pathlib import Path

import numpy as np

from .grid import ScalarField, create_grid, extend_with_ghost_cells
from .integrator import IntegratorOptions, ode_cfl_3
from .reachability import RocketParams, rockets_hamiltonian_oracle
from .snapshot import export_field, import_field
from .spatial import derivative_pair, weno5_workspace
from .term import TermOutput


def _check_ghost_round_trip() -> None:
    g = create_grid((0.0, -1.0), (1.0, 1.0), (6, 7), periodic_axes={1})
    rng = np.random.default_rng(7)
    f = ScalarField(rng.standard_normal(g.counts))
    ext = extend_with_ghost_cells(g, f, width=2)
    core = ext.values[2:-2, 2:-2]
    assert np.array_equal(core, f.values), "ghost strip is not the identity"


def _check_linear_consistency() -> None:
    g = create_grid((-2.0,), (3.0,), (24,))
    f = ScalarField(1.75 * g.axis_nodes[0] - 0.5)
    for scheme in ("first", "eno2", "eno3", "weno5"):
        pair = derivative_pair(g, f, 0, scheme)
        for side in (pair.left.values, pair.right.values):
            err = np.max(np.abs(side - 1.75))
            assert err < 1e-12, f"{scheme}: linear slope error {err:g}"


def _check_weno_weights() -> None:
    g = create_grid((-math.pi,), (math.pi,), (64,), periodic_axes={0})
    f = ScalarField(np.sin(g.axis_nodes[0]))
    ws = weno5_workspace(g, f, 0)
    total = ws.w1 + ws.w2 + ws.w3
    assert np.max(np.abs(total - 1.0)) < 1e-14, "WENO weights do not sum to 1"


def _check_rk3_amplification() -> None:
    lam, dt = -0.8, 0.3

    def term(t, y, cfg):
        return TermOutput(delta=ScalarField(lam * y.values), step_bound=np.inf)

    y0 = ScalarField(np.array([1.0]))
    opts = IntegratorOptions(cfl_factor=1.0, max_step=dt, single_step=True)
    res = ode_cfl_3(term, (0.0, dt), y0, opts, None)
    h = lam * dt
    want = 1.0 + h + h * h / 2.0 + h ** 3 / 6.0
    assert abs(res.y_final.values[0] - want) < 1e-14, "RK3 amplification mismatch"


def _check_oracle_homogeneity() -> None:
    params = RocketParams()
    rng = np.random.default_rng(11)
    for _ in range(50):
        state = rng.uniform(-5, 5, size=3)
        p = rng.uniform(-2, 2, size=3)
        h1 = rockets_hamiltonian_oracle(0.0, state, p, params)
        h2 = rockets_hamiltonian_oracle(0.0, state, 2.0 * p, params)
        assert abs(h2 - 2.0 * h1) < 1e-12, "oracle is not positively homogeneous"


def _check_snapshot_round_trip() -> None:
    g = create_grid((0.0, 0.0), (1.0, 1.0), (5, 4))
    rng = np.random.default_rng(3)
    f = ScalarField(rng.standard_normal(g.counts))
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "field.f64"
        export_field(f, g, path)
        back, shape = import_field(path)
    assert shape == g.counts and np.array_equal(back.values, f.values), \
        "snapshot round trip is lossy"


_CHECKS = (
    ("ghost-cell round trip", _check_ghost_round_trip),
    ("linear-field derivative consistency", _check_linear_consistency),
    ("WENO weight normalization", _check_weno_weights),
    ("TVD-RK3 amplification algebra", _check_rk3_amplification),
    ("rockets oracle homogeneity", _check_oracle_homogeneity),
    ("snapshot round trip", _check_snapshot_round_trip),
)


def run() -> int:
    """Run every check; returns 0 when all pass, 1 otherwise."""
    failures = 0
    for label, check in _CHECKS:
        try:
            check()
        except Exception as err:  # report and keep going
            failures += 1
            print(f"FAIL - {label}: {err}")
        else:
            print(f"ok - {label}")
    if failures:
        print(f"{failures} of {len(_CHECKS)} checks failed")
        return 1
    print(f"all {len(_CHECKS)} checks passed")
    return 0
