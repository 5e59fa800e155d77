"""Lattice containers shared by every module.

All arrays are stored with shape ``(ny, nx)``: row ``j`` holds the nodes at
height ``y = j / (ny - 1)`` and column ``i`` those at ``x = i / (nx - 1)``.
This matches the pixel layout of a grayscale image, so an ``H x W`` image
maps one-to-one onto an ``nx = W, ny = H`` lattice.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MIN_NODES = 3


def _as_lattice_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    ny, nx = arr.shape
    if nx < MIN_NODES or ny < MIN_NODES:
        raise ValueError(f"{name} needs at least {MIN_NODES}x{MIN_NODES} nodes, got {nx}x{ny}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ScalarField2D:
    """Scalar samples on a uniform node lattice over the unit square."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_lattice_array(self.values, "values"))

    @property
    def ny(self) -> int:
        return self.values.shape[0]

    @property
    def nx(self) -> int:
        return self.values.shape[1]

    @property
    def hx(self) -> float:
        return 1.0 / (self.nx - 1)

    @property
    def hy(self) -> float:
        return 1.0 / (self.ny - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def discrete_mean(self) -> float:
        return discrete_mean(self.values)


@dataclass(frozen=True)
class VectorField2D:
    """Two-component samples (``ux``, ``uy``) on a node lattice."""

    ux: np.ndarray
    uy: np.ndarray

    def __post_init__(self):
        ux = _as_lattice_array(self.ux, "ux")
        uy = _as_lattice_array(self.uy, "uy")
        if ux.shape != uy.shape:
            raise ValueError(f"component shapes differ: {ux.shape} vs {uy.shape}")
        object.__setattr__(self, "ux", ux)
        object.__setattr__(self, "uy", uy)

    @property
    def ny(self) -> int:
        return self.ux.shape[0]

    @property
    def nx(self) -> int:
        return self.ux.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.ux.shape


@dataclass(frozen=True)
class Grid2D:
    """Node positions of a deformed structured grid.

    ``px[j, i]``, ``py[j, i]`` is the image of reference node
    ``(i / (nx - 1), j / (ny - 1))``.
    """

    px: np.ndarray
    py: np.ndarray
    steps: int = 0
    scheme: str = "identity"
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        px = _as_lattice_array(self.px, "px")
        py = _as_lattice_array(self.py, "py")
        if px.shape != py.shape:
            raise ValueError(f"coordinate shapes differ: {px.shape} vs {py.shape}")
        object.__setattr__(self, "px", px)
        object.__setattr__(self, "py", py)

    @property
    def ny(self) -> int:
        return self.px.shape[0]

    @property
    def nx(self) -> int:
        return self.px.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.px.shape

    @classmethod
    def identity(cls, nx: int, ny: int) -> "Grid2D":
        px, py = reference_coordinates(nx, ny)
        return cls(px, py)

    def displacement(self) -> tuple[np.ndarray, np.ndarray]:
        x0, y0 = reference_coordinates(self.nx, self.ny)
        return self.px - x0, self.py - y0


def node_weights(ny: int, nx: int) -> np.ndarray:
    """Trapezoid-rule weights of the lattice nodes, summing to one.

    Edge nodes count half and corner nodes a quarter. These are the weights
    under which the mirrored-ghost Neumann Laplacian is self-adjoint, so the
    same average is used for monitor normalization and for the solvability
    check of the Poisson problem.
    """
    wx = np.ones(nx)
    wx[[0, -1]] = 0.5
    wy = np.ones(ny)
    wy[[0, -1]] = 0.5
    w = np.outer(wy, wx)
    return w / w.sum()


def discrete_mean(values: np.ndarray) -> float:
    """Trapezoid-weighted node average over the unit square."""
    values = np.asarray(values, dtype=np.float64)
    return float(np.sum(node_weights(*values.shape) * values))


def reference_coordinates(nx: int, ny: int) -> tuple[np.ndarray, np.ndarray]:
    """Reference node coordinates ``(x, y)``, each of shape ``(ny, nx)``.

    Computed as ``i / (nx - 1)`` so that the last node is exactly 1.0.
    """
    x = np.arange(nx, dtype=np.float64) / (nx - 1)
    y = np.arange(ny, dtype=np.float64) / (ny - 1)
    return np.meshgrid(x, y, indexing="xy")


def as_gray_image(img) -> np.ndarray:
    """Validate an 8-bit grayscale image given as a 2-D array."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"grayscale image must be 2-D, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.size and (np.any(arr < 0) or np.any(arr > 255) or np.any(arr != np.round(arr))):
            raise ValueError("pixel values must be integers in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr
