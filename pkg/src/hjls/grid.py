"""Cartesian grids, scalar fields, and ghost-cell extension.

A :class:`Grid` is a uniform tensor-product mesh over a box.  Periodic axes
use the exclusive-endpoint convention: the node set spans ``[min, max)`` and
``spacing = (max - min) / count``, so wrapped ghost values coincide with true
periodic samples.  Non-periodic axes include both endpoints and use
``spacing = (max - min) / (count - 1)``.

Fields are stored as contiguous row-major (C-order) float64 arrays; the last
axis varies fastest.  Construction rejects NaN/Inf so they cannot creep
silently through the min/max calculus used elsewhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

PERIODIC = "periodic"
EXTRAPOLATE = "extrapolate"
DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class BoundaryCondition:
    """Ghost-cell fill rule for one axis.

    kind is one of "periodic" (wrap), "extrapolate" (continue the boundary
    slope linearly), or "dirichlet" (fill a constant).  ``value`` is only
    meaningful for the dirichlet kind.
    """

    kind: str
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (PERIODIC, EXTRAPOLATE, DIRICHLET):
            raise ValueError(f"unknown boundary kind {self.kind!r}")


def periodic() -> BoundaryCondition:
    return BoundaryCondition(PERIODIC)


def extrapolate() -> BoundaryCondition:
    return BoundaryCondition(EXTRAPOLATE)


def dirichlet(value: float) -> BoundaryCondition:
    return BoundaryCondition(DIRICHLET, float(value))


@dataclass(frozen=True)
class ScalarField:
    """A float64 field sampled on every grid node, row-major.

    ``grid_shape`` defaults to the shape of ``values``; a flat array plus an
    explicit shape is also accepted.  All entries must be finite.
    """

    values: np.ndarray
    grid_shape: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        shape = tuple(int(n) for n in self.grid_shape) if self.grid_shape else v.shape
        if v.size != math.prod(shape):
            raise ValueError(
                f"field has {v.size} values but grid shape {shape} "
                f"needs {math.prod(shape)}"
            )
        v = np.ascontiguousarray(v.reshape(shape))
        if not np.all(np.isfinite(v)):
            raise ValueError("field contains non-finite values")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "grid_shape", shape)

    @property
    def flat(self) -> np.ndarray:
        """Row-major flat view of the values."""
        return self.values.ravel()

    def matches(self, g: "Grid") -> bool:
        return self.grid_shape == tuple(g.counts)


@dataclass(frozen=True)
class Grid:
    """Uniform Cartesian grid: bounds, node counts, spacings, boundary rules.

    Immutable after construction; safe to share.  Build through
    :func:`create_grid` so the invariants hold.
    """

    dim: int
    mins: np.ndarray
    maxs: np.ndarray
    counts: tuple[int, ...]
    spacings: np.ndarray
    axis_nodes: tuple[np.ndarray, ...]
    boundary: tuple[BoundaryCondition, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return self.counts

    @property
    def num_nodes(self) -> int:
        return math.prod(self.counts)

    def is_periodic(self, axis: int) -> bool:
        return self.boundary[axis].kind == PERIODIC


def create_grid(
    mins: Sequence[float],
    maxs: Sequence[float],
    counts: Sequence[int],
    periodic_axes: Iterable[int] = (),
) -> Grid:
    """Construct a validated grid.

    Args:
        mins, maxs: per-axis lower/upper bounds (upper exclusive on periodic
            axes).
        counts: nodes per axis, each at least 2.
        periodic_axes: axis indices that wrap.

    Raises:
        ValueError: on length mismatch, non-positive extent, or a count
            below 2, naming the offending axis.
    """
    lo = np.asarray(mins, dtype=np.float64).ravel()
    hi = np.asarray(maxs, dtype=np.float64).ravel()
    n = tuple(int(c) for c in np.asarray(counts).ravel())
    if not (lo.size == hi.size == len(n)):
        raise ValueError(
            f"mins/maxs/counts lengths differ: {lo.size}/{hi.size}/{len(n)}"
        )
    dim = lo.size
    if dim == 0:
        raise ValueError("grid needs at least one axis")
    per = set(int(a) for a in periodic_axes)
    for a in per:
        if not 0 <= a < dim:
            raise ValueError(f"periodic axis {a} out of range for dim {dim}")
    for i in range(dim):
        if not hi[i] > lo[i]:
            raise ValueError(f"axis {i}: extent must be positive, got [{lo[i]}, {hi[i]}]")
        if n[i] < 2:
            raise ValueError(f"axis {i}: need at least 2 nodes, got {n[i]}")

    spacings = np.empty(dim)
    nodes = []
    bcs = []
    for i in range(dim):
        if i in per:
            spacings[i] = (hi[i] - lo[i]) / n[i]
            nodes.append(lo[i] + spacings[i] * np.arange(n[i]))
            bcs.append(periodic())
        else:
            spacings[i] = (hi[i] - lo[i]) / (n[i] - 1)
            nodes.append(np.linspace(lo[i], hi[i], n[i]))
            bcs.append(extrapolate())
    return Grid(
        dim=dim,
        mins=lo,
        maxs=hi,
        counts=n,
        spacings=spacings,
        axis_nodes=tuple(nodes),
        boundary=tuple(bcs),
    )


def with_boundary(g: Grid, axis: int, bc: BoundaryCondition) -> Grid:
    """Return a copy of ``g`` with the boundary rule of one axis replaced.

    Swapping periodicity on/off is rejected: the node layout (endpoint
    convention) would no longer match.
    """
    if not 0 <= axis < g.dim:
        raise ValueError(f"axis {axis} out of range for dim {g.dim}")
    if (bc.kind == PERIODIC) != g.is_periodic(axis):
        raise ValueError("cannot change periodicity after construction")
    bcs = list(g.boundary)
    bcs[axis] = bc
    return replace(g, boundary=tuple(bcs))


def mesh_coordinates(g: Grid, axis: int) -> ScalarField:
    """Field whose value at each node is that node's coordinate along ``axis``."""
    if not 0 <= axis < g.dim:
        raise ValueError(f"axis {axis} out of range for dim {g.dim}")
    shape = [1] * g.dim
    shape[axis] = g.counts[axis]
    line = g.axis_nodes[axis].reshape(shape)
    return ScalarField(np.broadcast_to(line, g.counts).copy())


def _extend_axis(values: np.ndarray, bc: BoundaryCondition, axis: int, width: int) -> np.ndarray:
    """Extend one axis of ``values`` by ``width`` ghost nodes on each side."""
    n = values.shape[axis]
    work = np.moveaxis(values, axis, -1)
    if bc.kind == PERIODIC:
        if width > n:
            raise ValueError(
                f"ghost width {width} exceeds {n} nodes on periodic axis {axis}"
            )
        idx = np.arange(-width, n + width) % n
        out = work[..., idx]
    elif bc.kind == DIRICHLET:
        pad = [(0, 0)] * work.ndim
        pad[-1] = (width, width)
        out = np.pad(work, pad, mode="constant", constant_values=bc.value)
    else:  # linear extrapolation: ghost_k = edge + k * (edge - next inner)
        k = np.arange(1, width + 1)
        left_slope = work[..., :1] - work[..., 1:2]
        right_slope = work[..., -1:] - work[..., -2:-1]
        left = work[..., :1] + k[::-1] * left_slope
        right = work[..., -1:] + k * right_slope
        out = np.concatenate([left, work, right], axis=-1)
    return np.moveaxis(out, -1, axis)


def extend_with_ghost_cells(g: Grid, f: ScalarField, width: int) -> ScalarField:
    """Pad ``f`` with ``width`` ghost nodes per side along every axis.

    Periodic axes wrap, extrapolating axes continue the boundary slope, and
    dirichlet axes fill their constant.  Axes are extended in order, so corner
    ghosts are the composition of the per-axis rules.  Stripping ``width``
    nodes from every side restores the original field bit-exactly.
    """
    if width < 1:
        raise ValueError(f"ghost width must be >= 1, got {width}")
    if not f.matches(g):
        raise ValueError(f"field shape {f.grid_shape} does not match grid {g.counts}")
    out = f.values
    for axis in range(g.dim):
        out = _extend_axis(out, g.boundary[axis], axis, width)
    return ScalarField(out)
