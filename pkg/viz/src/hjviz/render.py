"""Level-set rendering: isosurfaces for 3-D fields, contours for 2-D.

Mesh extraction happens here at render time (marching cubes via
scikit-image); the solver's snapshots stay plain value arrays.  An empty
level set is not an error: the image is emitted with a note instead, since
early reachability snapshots routinely have no crossing.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from mpl_toolkits.mplot3d.art3d import Poly3DCollection
from skimage import measure

from .reader import GridInfo


def extract_isosurface(values: np.ndarray, level: float,
                       grid: GridInfo) -> tuple[np.ndarray, np.ndarray]:
    """Marching-cubes mesh of {values == level} in physical coordinates.

    Returns (vertices, faces); raises ValueError when the level is not
    crossed anywhere in the volume.
    """
    verts, faces, _, _ = measure.marching_cubes(values, level=level,
                                                spacing=grid.spacings)
    verts = verts + np.asarray(grid.mins)
    return verts, faces


def _axis_extents(values: np.ndarray, grid: GridInfo):
    return [
        (grid.mins[a], grid.mins[a] + grid.spacings[a] * (values.shape[a] - 1))
        for a in range(values.ndim)
    ]


def render_snapshot(values: np.ndarray, grid: GridInfo, level: float,
                    out_path: str | Path, title: str) -> None:
    """Write one PNG for a 1-D, 2-D, or 3-D field."""
    if values.ndim == 3:
        _render_3d(values, grid, level, out_path, title)
    elif values.ndim == 2:
        _render_2d(values, grid, level, out_path, title)
    elif values.ndim == 1:
        _render_1d(values, grid, level, out_path, title)
    else:
        raise ValueError(f"cannot render a {values.ndim}-D field")


def _render_3d(values, grid, level, out_path, title):
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    try:
        verts, faces = extract_isosurface(values, level, grid)
    except ValueError:
        ax.text2D(0.5, 0.5, f"level {level:g} not crossed", ha="center",
                  va="center", transform=ax.transAxes)
    else:
        mesh = Poly3DCollection(verts[faces], alpha=0.9)
        mesh.set_facecolor("steelblue")
        mesh.set_edgecolor("none")
        ax.add_collection3d(mesh)
    ext = _axis_extents(values, grid)
    ax.set_xlim(*ext[0])
    ax.set_ylim(*ext[1])
    ax.set_zlim(*ext[2])
    ax.set_xlabel("axis 0")
    ax.set_ylabel("axis 1")
    ax.set_zlabel("axis 2")
    ax.set_title(title)
    fig.savefig(out_path, dpi=110)
    plt.close(fig)


def _render_2d(values, grid, level, out_path, title):
    fig, ax = plt.subplots(figsize=(6, 5))
    ext = _axis_extents(values, grid)
    x = np.linspace(ext[0][0], ext[0][1], values.shape[0])
    y = np.linspace(ext[1][0], ext[1][1], values.shape[1])
    filled = ax.contourf(x, y, values.T, levels=20, cmap="RdBu")
    fig.colorbar(filled, ax=ax, shrink=0.85)
    if values.min() < level < values.max():
        ax.contour(x, y, values.T, levels=[level], colors="black", linewidths=1.5)
    else:
        ax.text(0.5, 0.5, f"level {level:g} not crossed", ha="center",
                va="center", transform=ax.transAxes)
    ax.set_xlabel("axis 0")
    ax.set_ylabel("axis 1")
    ax.set_title(title)
    fig.savefig(out_path, dpi=110)
    plt.close(fig)


def _render_1d(values, grid, level, out_path, title):
    fig, ax = plt.subplots(figsize=(6, 4))
    x = grid.mins[0] + grid.spacings[0] * np.arange(values.shape[0])
    ax.plot(x, values, lw=1.5)
    ax.axhline(level, color="black", lw=0.8, ls="--")
    ax.set_xlabel("axis 0")
    ax.set_ylabel("value")
    ax.set_title(title)
    fig.savefig(out_path, dpi=110)
    plt.close(fig)
