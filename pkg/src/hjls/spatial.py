"""One-sided upwind gradient approximations: first order, ENO2, ENO3, WENO5.

Every operation returns, per axis, the pair (left, right) of derivative
fields: ``left`` leans on the backward stencil (used when characteristics
flow rightward), ``right`` on the forward stencil.  Nodes next to
non-periodic boundaries use ghost-extended values; stencils never shrink.

Notation: with uniform spacing h, the divided differences are

    D0[i]     = v[i]
    D1[i+1/2] = (D0[i+1] - D0[i]) / h
    D2[i]     = (D1[i+1/2] - D1[i-1/2]) / (2h)
    D3[i+1/2] = (D2[i+1] - D2[i]) / (3h)

The left/right naming follows the standard convention (left = backward
difference side, right = forward).  Ghost widths: 1 (first order), 2 (ENO2),
3 (ENO3 and WENO5).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid, ScalarField, _extend_axis

GHOST_WIDTH = {"first": 1, "eno2": 2, "eno3": 3, "weno5": 3}

# optimal substencil weights of the fifth-order combination
_W_OPT = (0.1, 0.6, 0.3)


@dataclass(frozen=True)
class DerivativePair:
    """Left/backward and right/forward derivative fields along one axis."""

    left: ScalarField
    right: ScalarField
    axis: int


@dataclass(frozen=True)
class DividedDifferenceTable:
    """Divided differences along one (ghost-extended) axis.

    Arrays are oriented with the working axis last.  ``d1`` and ``d3`` sit at
    half-integer offsets, ``d0`` and ``d2`` at integers; each differencing
    shortens the axis by one entry.  ``d2``/``d3`` are None when not requested.
    """

    d0: np.ndarray
    d1: np.ndarray
    d2: np.ndarray | None
    d3: np.ndarray | None
    spacing: float


@dataclass(frozen=True)
class WenoWorkspace:
    """Per-node WENO diagnostics: smoothness, raw and normalized weights."""

    sigma1: np.ndarray
    sigma2: np.ndarray
    sigma3: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray
    alpha3: np.ndarray
    eps: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray


def _prepare(g: Grid, f: ScalarField, axis: int, width: int) -> tuple[np.ndarray, float, int]:
    """Ghost-extend along ``axis`` and move it last; returns (array, h, n)."""
    if not 0 <= axis < g.dim:
        raise ValueError(f"axis {axis} out of range for dim {g.dim}")
    if not f.matches(g):
        raise ValueError(f"field shape {f.grid_shape} does not match grid {g.counts}")
    ext = _extend_axis(f.values, g.boundary[axis], axis, width)
    return np.moveaxis(ext, axis, -1), float(g.spacings[axis]), g.counts[axis]


def _restore(left: np.ndarray, right: np.ndarray, axis: int) -> DerivativePair:
    return DerivativePair(
        left=ScalarField(np.moveaxis(left, -1, axis)),
        right=ScalarField(np.moveaxis(right, -1, axis)),
        axis=axis,
    )


def _tables(ext: np.ndarray, h: float, order: int) -> DividedDifferenceTable:
    d1 = np.diff(ext, axis=-1) / h
    d2 = np.diff(d1, axis=-1) / (2.0 * h) if order >= 2 else None
    d3 = np.diff(d2, axis=-1) / (3.0 * h) if order >= 3 else None
    return DividedDifferenceTable(d0=ext, d1=d1, d2=d2, d3=d3, spacing=h)


def divided_differences(g: Grid, f: ScalarField, axis: int, order: int = 3,
                        width: int | None = None) -> DividedDifferenceTable:
    """Divided-difference table of ``f`` along ``axis`` over its ghost extension."""
    if not 1 <= order <= 3:
        raise ValueError(f"order must be 1..3, got {order}")
    w = order if width is None else width
    ext, h, _ = _prepare(g, f, axis, w)
    return _tables(ext, h, order)


def _sl(arr: np.ndarray, k: int, n: int) -> np.ndarray:
    """Slice so that node i picks entry i + k of a difference array."""
    return arr[..., k : k + n]


def _pick_smaller(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ENO selection: the smaller-magnitude candidate, first on ties."""
    return np.where(np.abs(a) <= np.abs(b), a, b)


def upwind_first_first(g: Grid, f: ScalarField, axis: int) -> DerivativePair:
    """First-order upwind pair: plain backward/forward differences."""
    w = 1
    ext, h, n = _prepare(g, f, axis, w)
    t = _tables(ext, h, order=1)
    left = _sl(t.d1, w - 1, n)
    right = _sl(t.d1, w, n)
    return _restore(left.copy(), right.copy(), axis)


def _eno2_parts(t: DividedDifferenceTable, w: int, n: int):
    """Second-order left/right values shared by ENO2 and ENO3.

    Left at i starts from D1[i-1/2] and adds c*h with c the smaller-magnitude
    of D2[i-1], D2[i]; right starts from D1[i+1/2] and subtracts c*h with c
    from D2[i], D2[i+1].  Also returns the selection masks (True when the
    first, more backward candidate won) for the ENO3 substencil shift.
    """
    h = t.spacing
    la, lb = _sl(t.d2, w - 2, n), _sl(t.d2, w - 1, n)
    lcond = np.abs(la) <= np.abs(lb)
    left = _sl(t.d1, w - 1, n) + np.where(lcond, la, lb) * h
    ra, rb = _sl(t.d2, w - 1, n), _sl(t.d2, w, n)
    rcond = np.abs(ra) <= np.abs(rb)
    right = _sl(t.d1, w, n) - np.where(rcond, ra, rb) * h
    return left, right, lcond, rcond


def upwind_first_eno2(g: Grid, f: ScalarField, axis: int) -> DerivativePair:
    """Second-order ENO pair: first-order term plus the Q2 slope correction."""
    w = 2
    ext, h, n = _prepare(g, f, axis, w)
    t = _tables(ext, h, order=2)
    left, right, _, _ = _eno2_parts(t, w, n)
    return _restore(left, right, axis)


def upwind_first_eno3(g: Grid, f: ScalarField, axis: int) -> DerivativePair:
    """Third-order ENO pair: ENO2 plus the Q3 correction.

    The substencil start k* follows the second-difference comparison (shift
    one node backward when the backward candidate won); c* is the
    smaller-magnitude of D3[k*+1/2], D3[k*+3/2], ties taking the first.  The
    correction is c* * (3(i-k*)^2 - 6(i-k*) + 2) * h^2, i.e. 2*c**h^2 when
    i-k* = 2 and -c**h^2 when i-k* = 1 (left); mirrored for the right side.
    """
    w = 3
    ext, h, n = _prepare(g, f, axis, w)
    t = _tables(ext, h, order=3)
    left2, right2, lcond, rcond = _eno2_parts(t, w, n)

    first = np.where(lcond, _sl(t.d3, w - 3, n), _sl(t.d3, w - 2, n))
    second = np.where(lcond, _sl(t.d3, w - 2, n), _sl(t.d3, w - 1, n))
    mult = np.where(lcond, 2.0, -1.0)
    left = left2 + _pick_smaller(first, second) * mult * h * h

    first = np.where(rcond, _sl(t.d3, w - 2, n), _sl(t.d3, w - 1, n))
    second = np.where(rcond, _sl(t.d3, w - 1, n), _sl(t.d3, w, n))
    mult = np.where(rcond, -1.0, 2.0)
    right = right2 + _pick_smaller(first, second) * mult * h * h
    return _restore(left, right, axis)


def _weno_side(m1, m2, m3, m4, m5, eps_mode: str):
    """Fifth-order WENO combination of three substencil estimates.

    The substencils (consistency: coefficients sum to 1):

        s0 =  m1/3 - 7 m2/6 + 11 m3/6
        s1 = -m2/6 + 5 m3/6 +    m4/3
        s2 =  m3/3 + 5 m4/6 -    m5/6

    combined with weights w_k built from the smoothness indicators sigma_k and
    the regularizer eps = 1e-6 * max_local + 1e-99, where max_local is the
    per-node max of the five stencil values (their squares by default,
    ``eps_mode="raw"`` uses the values themselves).
    """
    s0 = m1 / 3.0 - 7.0 * m2 / 6.0 + 11.0 * m3 / 6.0
    s1 = -m2 / 6.0 + 5.0 * m3 / 6.0 + m4 / 3.0
    s2 = m3 / 3.0 + 5.0 * m4 / 6.0 - m5 / 6.0

    c = 13.0 / 12.0
    sigma1 = c * (m1 - 2.0 * m2 + m3) ** 2 + 0.25 * (m1 - 4.0 * m2 + 3.0 * m3) ** 2
    sigma2 = c * (m2 - 2.0 * m3 + m4) ** 2 + 0.25 * (m2 - m4) ** 2
    sigma3 = c * (m3 - 2.0 * m4 + m5) ** 2 + 0.25 * (3.0 * m3 - 4.0 * m4 + m5) ** 2

    if eps_mode == "squared":
        local = np.maximum.reduce([m1 * m1, m2 * m2, m3 * m3, m4 * m4, m5 * m5])
    elif eps_mode == "raw":
        local = np.maximum.reduce([m1, m2, m3, m4, m5])
    else:
        raise ValueError(f"eps_mode must be 'squared' or 'raw', got {eps_mode!r}")
    eps = 1e-6 * local + 1e-99

    alpha1 = _W_OPT[0] / (sigma1 + eps) ** 2
    alpha2 = _W_OPT[1] / (sigma2 + eps) ** 2
    alpha3 = _W_OPT[2] / (sigma3 + eps) ** 2
    total = alpha1 + alpha2 + alpha3
    w1, w2, w3 = alpha1 / total, alpha2 / total, alpha3 / total

    value = w1 * s0 + w2 * s1 + w3 * s2
    ws = WenoWorkspace(sigma1, sigma2, sigma3, alpha1, alpha2, alpha3, eps, w1, w2, w3)
    return value, ws


def _weno_slots(t: DividedDifferenceTable, w: int, n: int, side: str):
    """The five first-difference slots feeding one WENO side.

    Left at node i reads D1 at half-points i-5/2 .. i+3/2; the right side
    mirrors the stencil about i (same half-points reflected).
    """
    if side == "left":
        ks = (w - 3, w - 2, w - 1, w, w + 1)
    elif side == "right":
        ks = (w + 2, w + 1, w, w - 1, w - 2)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return tuple(_sl(t.d1, k, n) for k in ks)


def upwind_first_weno5(g: Grid, f: ScalarField, axis: int,
                       eps_mode: str = "squared") -> DerivativePair:
    """Fifth-order WENO pair (third-order ENO stencil, convexly reweighted)."""
    w = 3
    ext, h, n = _prepare(g, f, axis, w)
    t = _tables(ext, h, order=1)
    left, _ = _weno_side(*_weno_slots(t, w, n, "left"), eps_mode)
    right, _ = _weno_side(*_weno_slots(t, w, n, "right"), eps_mode)
    return _restore(left, right, axis)


def weno5_workspace(g: Grid, f: ScalarField, axis: int, side: str = "left",
                    eps_mode: str = "squared") -> WenoWorkspace:
    """Expose the WENO smoothness/weight internals for one side."""
    w = 3
    ext, h, n = _prepare(g, f, axis, w)
    t = _tables(ext, h, order=1)
    _, ws = _weno_side(*_weno_slots(t, w, n, side), eps_mode)
    return ws


_SCHEMES = {
    "first": upwind_first_first,
    "eno2": upwind_first_eno2,
    "eno3": upwind_first_eno3,
    "weno5": upwind_first_weno5,
}


def derivative_pair(g: Grid, f: ScalarField, axis: int, scheme: str) -> DerivativePair:
    """Dispatch to one of the upwind schemes by name."""
    try:
        fn = _SCHEMES[scheme]
    except KeyError:
        raise ValueError(
            f"unknown derivative scheme {scheme!r}; pick from {sorted(_SCHEMES)}"
        ) from None
    return fn(g, f, axis)
