"""CFL-constrained TVD Runge-Kutta integrators of orders 1-3.

Each integrator repeatedly asks the term for (dv/dt, step bound), picks
dt = min(cfl_factor * bound, max_step, time remaining), and advances with
forward-Euler building blocks:

    order 1:  v <- v + dt * L(v)
    order 2:  two Euler substeps, then v <- (v0 + v2) / 2
    order 3:  two Euler substeps, v_half <- (3 v0 + v2) / 4,
              one more Euler substep from v_half,
              then v <- (v0 + 2 v_3half) / 3

dt is frozen across the substeps of one global step.  The last step is
clipped so the final time is hit exactly.  The term is any callable
``term(t, y, scheme_data) -> TermOutput``; the integrator treats the scheme
data as opaque and the state as a flat vector (all updates are elementwise),
so fields of any shape pass through unchanged.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .grid import ScalarField
from .term import TermOutput


@dataclass(frozen=True)
class IntegratorOptions:
    """Step-size policy and bookkeeping switches."""

    cfl_factor: float = 0.5
    max_step: float | None = None
    single_step: bool = False
    collect_stats: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl_factor <= 1.0:
            raise ValueError(f"cfl_factor must be in (0, 1], got {self.cfl_factor}")
        if self.max_step is not None and self.max_step <= 0.0:
            raise ValueError(f"max_step must be positive, got {self.max_step}")


@dataclass(frozen=True)
class IntegrationResult:
    t_final: float
    y_final: ScalarField
    steps_taken: int
    min_dt: float
    max_dt: float


Term = Callable[[float, ScalarField, Any], TermOutput]


def _rhs(term: Term, t: float, y: ScalarField, cfg: Any, step: int) -> TermOutput:
    try:
        out = term(t, y, cfg)
    except ValueError as err:
        raise RuntimeError(f"term evaluation failed at step {step} (t={t:g}): {err}") from err
    if not np.all(np.isfinite(out.delta.values)):
        raise RuntimeError(f"non-finite dv/dt at step {step} (t={t:g})")
    return out


def _integrate(term: Term, tspan, y0: ScalarField, opts: IntegratorOptions,
               cfg: Any, order: int) -> IntegrationResult:
    t0, t1 = float(tspan[0]), float(tspan[1])
    if t1 < t0:
        raise ValueError(f"tspan must be increasing, got [{t0}, {t1}]")
    opts = opts if opts is not None else IntegratorOptions()

    t = t0
    y = y0.values
    steps = 0
    min_dt, max_dt = np.inf, 0.0
    while t < t1:
        out = _rhs(term, t, ScalarField(y), cfg, steps)
        dt = opts.cfl_factor * out.step_bound
        if opts.max_step is not None:
            dt = min(dt, opts.max_step)
        remaining = t1 - t
        last = dt >= remaining
        if last:
            dt = remaining
        if not (dt > 0.0 and np.isfinite(dt)):
            raise RuntimeError(f"step {steps}: no usable step size (dt={dt})")

        if order == 1:
            y_next = y + dt * out.delta.values
        elif order == 2:
            y1 = y + dt * out.delta.values
            out2 = _rhs(term, t + dt, ScalarField(y1), cfg, steps)
            y_next = 0.5 * (y + (y1 + dt * out2.delta.values))
        else:
            y1 = y + dt * out.delta.values
            out2 = _rhs(term, t + dt, ScalarField(y1), cfg, steps)
            y_half = 0.25 * (3.0 * y + (y1 + dt * out2.delta.values))
            out3 = _rhs(term, t + 0.5 * dt, ScalarField(y_half), cfg, steps)
            y_next = (y + 2.0 * (y_half + dt * out3.delta.values)) / 3.0

        y = y_next
        t = t1 if last else t + dt
        steps += 1
        min_dt = min(min_dt, dt)
        max_dt = max(max_dt, dt)
        if opts.collect_stats:
            print(
                f"step {steps}: t={t:.6g} dt={dt:.6g} "
                f"min={y.min():.6g} max={y.max():.6g}",
                file=sys.stderr,
            )
        if opts.single_step:
            break
    if steps == 0:
        min_dt = 0.0
    return IntegrationResult(
        t_final=t,
        y_final=ScalarField(y),
        steps_taken=steps,
        min_dt=min_dt,
        max_dt=max_dt,
    )


def ode_cfl_1(term: Term, tspan, y0: ScalarField,
              opts: IntegratorOptions | None = None, cfg: Any = None) -> IntegrationResult:
    """Forward Euler under the CFL bound."""
    return _integrate(term, tspan, y0, opts or IntegratorOptions(), cfg, order=1)


def ode_cfl_2(term: Term, tspan, y0: ScalarField,
              opts: IntegratorOptions | None = None, cfg: Any = None) -> IntegrationResult:
    """Second-order TVD Runge-Kutta (Euler pair plus midpoint averaging)."""
    return _integrate(term, tspan, y0, opts or IntegratorOptions(), cfg, order=2)


def ode_cfl_3(term: Term, tspan, y0: ScalarField,
              opts: IntegratorOptions | None = None, cfg: Any = None) -> IntegrationResult:
    """Third-order TVD Runge-Kutta (two Euler substeps, two averagings)."""
    return _integrate(term, tspan, y0, opts or IntegratorOptions(), cfg, order=3)
