"""Implicit-surface initial conditions and Boolean calculus on them.

Interiors are negative, the surface is the zero level set.  Sphere, cylinder
and box are exact signed distance functions; the ellipsoid is the usual
quadratic level function, which is smeared (not unit-gradient) away from the
surface.  No redistancing is performed.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .grid import Grid, ScalarField, mesh_coordinates


def _center(g: Grid, center: Sequence[float]) -> np.ndarray:
    c = np.asarray(center, dtype=np.float64).ravel()
    if c.size != g.dim:
        raise ValueError(f"center has {c.size} entries, grid has {g.dim} axes")
    return c


def sphere(g: Grid, center: Sequence[float], radius: float) -> ScalarField:
    """Signed distance to a sphere: ||x - center|| - radius."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    c = _center(g, center)
    d2 = np.zeros(g.counts)
    for axis in range(g.dim):
        d2 += (mesh_coordinates(g, axis).values - c[axis]) ** 2
    return ScalarField(np.sqrt(d2) - radius)


def cylinder(g: Grid, ignored_axis: int, center: Sequence[float], radius: float) -> ScalarField:
    """Signed distance to an axis-aligned cylinder, constant along ``ignored_axis``."""
    if g.dim < 2:
        raise ValueError("cylinder needs a grid with at least 2 axes")
    if not 0 <= ignored_axis < g.dim:
        raise ValueError(f"axis {ignored_axis} out of range for dim {g.dim}")
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    c = _center(g, center)
    d2 = np.zeros(g.counts)
    for axis in range(g.dim):
        if axis == ignored_axis:
            continue
        d2 += (mesh_coordinates(g, axis).values - c[axis]) ** 2
    return ScalarField(np.sqrt(d2) - radius)


def ellipsoid(g: Grid, semiaxis_weights: Sequence[float], radius: float) -> ScalarField:
    """Quadratic ellipsoid level function: sum_i w_i * x_i**2 - radius.

    Not a signed distance function; the representation is smeared away from
    the zero level set.  Weights (1, 4, 9) give the stock 3-D ellipsoid.
    """
    w = np.asarray(semiaxis_weights, dtype=np.float64).ravel()
    if w.size != g.dim:
        raise ValueError(f"got {w.size} weights for a {g.dim}-axis grid")
    if np.any(w <= 0):
        raise ValueError("semiaxis weights must be positive")
    e = np.zeros(g.counts)
    for axis in range(g.dim):
        e += w[axis] * mesh_coordinates(g, axis).values ** 2
    return ScalarField(e - radius)


def hyper_rectangle(g: Grid, lower: Sequence[float], upper: Sequence[float]) -> ScalarField:
    """Exact signed distance to an axis-aligned box boundary."""
    lo = _center(g, lower)
    hi = _center(g, upper)
    if np.any(lo >= hi):
        raise ValueError("degenerate box: lower must be < upper elementwise")
    # q_i = per-axis distance outside the slab [lo_i, hi_i] (negative inside)
    q = [
        np.maximum(lo[a] - mesh_coordinates(g, a).values,
                   mesh_coordinates(g, a).values - hi[a])
        for a in range(g.dim)
    ]
    outside = np.sqrt(sum(np.maximum(qa, 0.0) ** 2 for qa in q))
    inside = np.minimum(np.maximum.reduce(q), 0.0)
    return ScalarField(outside + inside)


def _check_same_shape(a: ScalarField, b: ScalarField) -> None:
    if a.grid_shape != b.grid_shape:
        raise ValueError(f"shape mismatch: {a.grid_shape} vs {b.grid_shape}")


def csg_union(a: ScalarField, b: ScalarField) -> ScalarField:
    """Union of interiors: pointwise min."""
    _check_same_shape(a, b)
    return ScalarField(np.minimum(a.values, b.values))


def csg_intersect(a: ScalarField, b: ScalarField) -> ScalarField:
    """Intersection of interiors: pointwise max."""
    _check_same_shape(a, b)
    return ScalarField(np.maximum(a.values, b.values))


def csg_complement(a: ScalarField) -> ScalarField:
    """Complement: negate."""
    return ScalarField(-a.values)


def csg_difference(a: ScalarField, b: ScalarField) -> ScalarField:
    """A minus B's interior: max(a, -b)."""
    _check_same_shape(a, b)
    return ScalarField(np.maximum(a.values, -b.values))
