"""Two-rocket pursuit-evasion game and its backward reachable tube.

Reduced-space state is (x, z, theta): the planar offset between the rockets
and the relative thrust inclination.  Both rockets share the thrust
acceleration ``a`` and gravity ``grav``; each steers a bounded control in
[u_min, u_max].  The tube collects every state from which the pursuer can
force the offset inside the capture disc within the horizon.

Two independent Hamiltonian routes are provided on purpose:

* :func:`rockets_hamiltonian` - the closed-form expression used by the tube
  driver, kept exactly as published;
* :func:`rockets_hamiltonian_oracle` - brute-force extremal enumeration of
  the min-max over the dynamics, exact because the inner product is affine
  in each control.

The two routes do not agree in sign on all of costate space; the test suite
audits their agreement instead of papering over the difference, and the
driver stays with the closed form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .grid import Grid, ScalarField
from .integrator import IntegrationResult, IntegratorOptions, ode_cfl_3
from .term import TermConfig, TermOutput, term_lax_friedrichs


@dataclass(frozen=True)
class RocketParams:
    """Shared rocket constants (feet/second units)."""

    a: float = 1.0
    grav: float = 32.0
    capture_radius: float = 1.5
    u_min: float = -1.0
    u_max: float = 1.0

    def __post_init__(self) -> None:
        if self.a <= 0 or self.grav <= 0 or self.capture_radius <= 0:
            raise ValueError("a, grav and capture_radius must be positive")
        if not self.u_min < self.u_max:
            raise ValueError(f"need u_min < u_max, got [{self.u_min}, {self.u_max}]")


def _relative_velocity(x: float, theta: float, u_p: float, u_e: float,
                       params: RocketParams) -> tuple[float, float, float]:
    """Reduced-space dynamics vector for one control pair."""
    a, g = params.a, params.grav
    return (
        a * np.cos(theta) + u_e * x,
        a * np.sin(theta) + a + u_p * x - g,
        u_p - u_e,
    )


def rockets_hamiltonian(t: float, g: Grid, v: ScalarField,
                        p: Sequence[ScalarField], params: RocketParams) -> ScalarField:
    """Closed-form game Hamiltonian on the grid.

    H = -a p1 cos(theta) - p2 (grav - a - a sin(theta))
        - u_max |p1 x + p3| + u_min |p2 x + p3|
    """
    if len(p) != 3:
        raise ValueError(f"expected 3 costate fields, got {len(p)}")
    x = g.axis_nodes[0].reshape(-1, 1, 1)
    theta = g.axis_nodes[2].reshape(1, 1, -1)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    p1, p2, p3 = (pi.values for pi in p)
    a, grav = params.a, params.grav
    h = (
        -a * p1 * cos_t
        - p2 * (grav - a - a * sin_t)
        - params.u_max * np.abs(p1 * x + p3)
        + params.u_min * np.abs(p2 * x + p3)
    )
    return ScalarField(h)


def rockets_hamiltonian_extremal(t: float, g: Grid, v: ScalarField,
                                 p: Sequence[ScalarField], params: RocketParams) -> ScalarField:
    """Game Hamiltonian evaluated from the extremal controls on the grid.

    Carries out the min-max over the dynamics in closed form (controls are
    affine, so the extrema sit at interval endpoints):

        H = -a p1 cos(theta) + p2 (grav - a - a sin(theta))
            - mid (c1 + c2) - half |c1| + half |c2|

    with c1 = p1 x - p3, c2 = p2 x + p3, mid = (u_max + u_min)/2 and
    half = (u_max - u_min)/2.  Agrees with the corner-enumeration oracle to
    roundoff; differs from :func:`rockets_hamiltonian` in the sign structure
    of the p2 and control terms.
    """
    if len(p) != 3:
        raise ValueError(f"expected 3 costate fields, got {len(p)}")
    x = g.axis_nodes[0].reshape(-1, 1, 1)
    theta = g.axis_nodes[2].reshape(1, 1, -1)
    p1, p2, p3 = (pi.values for pi in p)
    a, grav = params.a, params.grav
    mid = 0.5 * (params.u_max + params.u_min)
    half = 0.5 * (params.u_max - params.u_min)
    c1 = p1 * x - p3
    c2 = p2 * x + p3
    h = (
        -a * p1 * np.cos(theta)
        + p2 * (grav - a - a * np.sin(theta))
        - mid * (c1 + c2)
        - half * np.abs(c1)
        + half * np.abs(c2)
    )
    return ScalarField(h)


def rockets_hamiltonian_oracle(t: float, state: Sequence[float], p: Sequence[float],
                               params: RocketParams) -> float:
    """Extremal-control enumeration of -max_{u_e} min_{u_p} p . f(state, u_p, u_e).

    The inner product is affine in each control, so scanning the four corner
    pairs (u_min/u_max for each player) is exact.
    """
    x, _, theta = (float(s) for s in state)
    p1, p2, p3 = (float(c) for c in p)
    corners = (params.u_min, params.u_max)
    best_e = -np.inf
    for u_e in corners:
        best_p = np.inf
        for u_p in corners:
            fx, fz, ft = _relative_velocity(x, theta, u_p, u_e, params)
            best_p = min(best_p, p1 * fx + p2 * fz + p3 * ft)
        best_e = max(best_e, best_p)
    return -best_e


def rockets_partials(t: float, g: Grid, v: ScalarField,
                     ranges: Sequence[tuple[float, float]], axis: int,
                     params: RocketParams) -> float:
    """Global bound on |dH/dp_axis| for the dissipation coefficients.

    From the closed form: the p1 coefficient is bounded by a + |u_max| max|x|,
    the p2 coefficient by max(|grav|, |grav - 2a|) + |u_min| max|x| (the
    trigonometric factor is extremized analytically), and the p3 coefficient
    by |u_max| + |u_min|.
    """
    a, grav = params.a, params.grav
    x_max = float(max(abs(g.mins[0]), abs(g.maxs[0])))
    if axis == 0:
        return a + abs(params.u_max) * x_max
    if axis == 1:
        return max(abs(grav), abs(grav - 2.0 * a)) + abs(params.u_min) * x_max
    if axis == 2:
        return abs(params.u_max) + abs(params.u_min)
    raise ValueError(f"axis {axis} out of range for the 3-state rockets game")


def rockets_term_config(params: RocketParams, scheme: str = "eno2",
                        hamiltonian: str = "published") -> TermConfig:
    """Bundle a rockets Hamiltonian with its dissipation bounds.

    ``hamiltonian`` selects the route: "published" (the default tube driver
    choice, :func:`rockets_hamiltonian`) or "extremal"
    (:func:`rockets_hamiltonian_extremal`).  The dissipation bounds cover both.
    """
    if hamiltonian == "published":
        ham_fn = rockets_hamiltonian
    elif hamiltonian == "extremal":
        ham_fn = rockets_hamiltonian_extremal
    else:
        raise ValueError(
            f"hamiltonian must be 'published' or 'extremal', got {hamiltonian!r}"
        )

    def ham(t: float, g: Grid, v: ScalarField, p: Sequence[ScalarField]) -> ScalarField:
        return ham_fn(t, g, v, p, params)

    def partials(t: float, g: Grid, v: ScalarField, ranges, axis: int) -> float:
        return rockets_partials(t, g, v, ranges, axis, params)

    return TermConfig(hamiltonian=ham, partials=partials, derivative_scheme=scheme)


@dataclass(frozen=True)
class ReachProblem:
    """A tube computation: grid, target level function, term wiring, horizon."""

    grid: Grid
    target: ScalarField
    params: RocketParams
    term_config: TermConfig
    horizon: float
    global_steps: int

    def __post_init__(self) -> None:
        if self.grid.dim != 3:
            raise ValueError(f"rockets game needs a 3-D grid, got dim {self.grid.dim}")
        if not self.grid.is_periodic(2):
            raise ValueError("the heading axis (axis 2) must be periodic")
        if not self.target.matches(self.grid):
            raise ValueError("target field does not match the grid")
        if self.horizon < 0:
            raise ValueError(f"horizon must be nonnegative, got {self.horizon}")
        if self.global_steps < 1:
            raise ValueError(f"need at least one global step, got {self.global_steps}")


@dataclass(frozen=True)
class BRTResult:
    """Tube snapshots (one per checkpoint, the first at lookback time 0)."""

    snapshots: tuple[ScalarField, ...]
    times: tuple[float, ...]


def solve_brt(problem: ReachProblem, opts: IntegratorOptions | None = None,
              progress: Callable[[int, float, ScalarField], None] | None = None) -> BRTResult:
    """Grow the backward reachable tube over ``global_steps`` equal intervals.

    Each interval integrates the Lax-Friedrichs term with the third-order
    TVD-RK scheme, then freezes states already inside the tube by masking
    against the previous snapshot (pointwise min for over-approximation, max
    for under-approximation).  Masking makes the snapshots nested by
    construction.  ``progress``, when given, is called after each interval
    with (interval index, lookback time, snapshot).
    """
    if problem.horizon == 0:
        return BRTResult(snapshots=(problem.target,), times=(0.0,))
    opts = opts or IntegratorOptions()
    g = problem.grid
    cfg = problem.term_config
    mask = np.minimum if cfg.approximation_sign == "over" else np.maximum

    def rhs(t: float, y: ScalarField, scheme_data: TermConfig) -> TermOutput:
        return term_lax_friedrichs(t, y, scheme_data, g)

    snaps = [problem.target]
    times = [0.0]
    v = problem.target
    for k in range(1, problem.global_steps + 1):
        t0 = times[-1]
        t1 = problem.horizon * k / problem.global_steps
        try:
            res: IntegrationResult = ode_cfl_3(rhs, (t0, t1), v, opts, cfg)
        except Exception as err:
            raise RuntimeError(f"tube interval {k} failed: {err}") from err
        v = ScalarField(mask(res.y_final.values, snaps[-1].values))
        snaps.append(v)
        times.append(t1)
        if progress is not None:
            progress(k, t1, v)
    return BRTResult(snapshots=tuple(snaps), times=tuple(times))


def sublevel_volume(g: Grid, f: ScalarField, level: float = 0.0) -> float:
    """Volume of {f < level}, counting each node as one grid cell."""
    cell = float(np.prod(g.spacings))
    return cell * float(np.count_nonzero(f.values < level))
