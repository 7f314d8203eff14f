"""Lax-Friedrichs right-hand side for v_t + H(x, grad v) = 0.

The term evaluates H at the averaged left/right costates and subtracts a
global artificial-dissipation correction proportional to the left/right jump,
with per-axis coefficients alpha_i bounding |dH/dp_i| over the whole-grid
costate range.  It also reports the CFL step bound 1 / sum_i(alpha_i / dx_i).

Evaluator contracts (the scheme-data analog):

    hamiltonian(t, grid, v, p_avg)        -> ScalarField (or array) of H(x, p)
    partials(t, grid, v, ranges, axis)    -> float bound on max |dH/dp_axis|,
                                             ranges[i] = (lo, hi) of costate i
                                             over the grid

Both must be pure functions of their arguments; evaluation order is
deterministic so repeated runs agree bit-exactly.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .grid import Grid, ScalarField
from .spatial import GHOST_WIDTH, DerivativePair, derivative_pair

Hamiltonian = Callable[[float, Grid, ScalarField, Sequence[ScalarField]], ScalarField]
Partials = Callable[[float, Grid, ScalarField, Sequence[tuple[float, float]], int], float]


@dataclass(frozen=True)
class TermConfig:
    """Wiring for one Hamiltonian term: evaluators plus scheme choices."""

    hamiltonian: Hamiltonian
    partials: Partials
    derivative_scheme: str = "eno2"
    dissipation: str = "glf"
    approximation_sign: str = "over"  # over/under; honored by the tube driver

    def __post_init__(self) -> None:
        if self.derivative_scheme not in GHOST_WIDTH:
            raise ValueError(
                f"unknown derivative scheme {self.derivative_scheme!r}; "
                f"pick from {sorted(GHOST_WIDTH)}"
            )
        if self.dissipation != "glf":
            raise ValueError(f"only 'glf' dissipation is available, got {self.dissipation!r}")
        if self.approximation_sign not in ("over", "under"):
            raise ValueError(f"approximation_sign must be 'over' or 'under'")


@dataclass(frozen=True)
class TermOutput:
    """dv/dt field plus the inverse-CFL step bound."""

    delta: ScalarField
    step_bound: float


def dissipation_glf(derivs: Sequence[DerivativePair], partials: Partials,
                    t: float, v: ScalarField, g: Grid) -> tuple[ScalarField, np.ndarray]:
    """Global Lax-Friedrichs dissipation and its per-axis coefficients.

    alpha_i = partials(...) evaluated on the global costate range
    [min(p-, p+), max(p-, p+)] of each axis; the returned field is
    sum_i alpha_i * (p_i^+ - p_i^-) / 2.
    """
    ranges = tuple(
        (
            float(min(d.left.values.min(), d.right.values.min())),
            float(max(d.left.values.max(), d.right.values.max())),
        )
        for d in derivs
    )
    alphas = np.empty(len(derivs))
    for i in range(len(derivs)):
        a = float(partials(t, g, v, ranges, i))
        if not np.isfinite(a) or a < 0.0:
            raise ValueError(f"partials returned invalid bound {a} for axis {i}")
        alphas[i] = a
    diss = np.zeros(v.grid_shape)
    for i, d in enumerate(derivs):
        diss += alphas[i] * 0.5 * (d.right.values - d.left.values)
    return ScalarField(diss), alphas


def term_lax_friedrichs(t: float, v: ScalarField, cfg: TermConfig, g: Grid) -> TermOutput:
    """One evaluation of the monotone Lax-Friedrichs right-hand side.

    Returns delta = -(H(x, p_avg) - dissipation) and the CFL bound
    1 / sum_i(alpha_i / dx_i).  With every alpha zero the bound is infinite;
    a warning is emitted if H is nonzero there, since monotonicity is then
    unconstrained.
    """
    if not v.matches(g):
        raise ValueError(f"field shape {v.grid_shape} does not match grid {g.counts}")
    derivs = [derivative_pair(g, v, axis, cfg.derivative_scheme) for axis in range(g.dim)]
    p_avg = [ScalarField(0.5 * (d.left.values + d.right.values)) for d in derivs]

    ham = cfg.hamiltonian(t, g, v, p_avg)
    ham_values = ham.values if isinstance(ham, ScalarField) else np.asarray(ham, dtype=np.float64)
    if ham_values.shape != v.grid_shape:
        raise ValueError(
            f"hamiltonian returned shape {ham_values.shape}, expected {v.grid_shape}"
        )
    if not np.all(np.isfinite(ham_values)):
        raise ValueError("hamiltonian returned non-finite values")

    diss, alphas = dissipation_glf(derivs, cfg.partials, t, v, g)
    delta = ScalarField(diss.values - ham_values)

    inv_bound = float(np.sum(alphas / g.spacings))
    if inv_bound > 0.0:
        step_bound = 1.0 / inv_bound
    else:
        step_bound = np.inf
        if np.any(ham_values != 0.0):
            warnings.warn(
                "all dissipation coefficients are zero while H is nonzero; "
                "CFL step bound is undefined (reported as infinite)",
                stacklevel=2,
            )
    return TermOutput(delta=delta, step_bound=step_bound)


def advection_term_config(speeds: Sequence[float], scheme: str = "first") -> TermConfig:
    """Constant-coefficient advection H = sum_i c_i p_i with alpha_i = |c_i|.

    Handy for self-tests: the exact solution just translates the profile.
    """
    c = np.asarray(speeds, dtype=np.float64).ravel()

    def ham(t: float, g: Grid, v: ScalarField, p: Sequence[ScalarField]) -> ScalarField:
        out = np.zeros(v.grid_shape)
        for i in range(g.dim):
            out += c[i] * p[i].values
        return ScalarField(out)

    def partials(t: float, g: Grid, v: ScalarField, ranges, axis: int) -> float:
        return abs(float(c[axis]))

    return TermConfig(hamiltonian=ham, partials=partials, derivative_scheme=scheme)
