"""Transport of the reference lattice under ``dphi/dt = f(phi, t) u(phi)``.

Starting from the identity map, every node is advanced with fixed-step RK4.
Boundary nodes keep their wall-normal coordinate, so the unit square is
mapped onto itself.
"""
from __future__ import annotations

import numpy as np

from . import _backend
from .errors import FoldDetected
from .fields import Grid2D, ScalarField2D, VectorField2D, reference_coordinates
from .monitor import MonitorPair

__all__ = ["sample_field", "sample_monitor_at", "integrate_deformation", "interior_min_jacobian"]


def _cell(coord: float, n: int) -> tuple[int, float]:
    s = coord * (n - 1)
    i = min(int(np.floor(s)), n - 2)
    return i, s - i


def _bilinear(v: np.ndarray, i: int, j: int, tx: float, ty: float) -> float:
    a = 1.0 - tx
    b = 1.0 - ty
    return a * b * v[j, i] + tx * b * v[j, i + 1] + a * ty * v[j + 1, i] + tx * ty * v[j + 1, i + 1]


def sample_field(field, point, monitor: bool = False):
    """Bilinear evaluation of a lattice field at ``point = (x, y)``.

    Points outside the unit square are clamped onto it. With
    ``monitor=True`` the reciprocal ``1/f`` is interpolated and inverted,
    which keeps the result positive.

    Returns a float for a :class:`ScalarField2D` and an ``(ux, uy)`` tuple
    for a :class:`VectorField2D`.
    """
    x = min(max(float(point[0]), 0.0), 1.0)
    y = min(max(float(point[1]), 0.0), 1.0)
    if isinstance(field, VectorField2D):
        i, tx = _cell(x, field.nx)
        j, ty = _cell(y, field.ny)
        return _bilinear(field.ux, i, j, tx, ty), _bilinear(field.uy, i, j, tx, ty)
    i, tx = _cell(x, field.nx)
    j, ty = _cell(y, field.ny)
    if monitor:
        return 1.0 / _bilinear(1.0 / field.values, i, j, tx, ty)
    return _bilinear(field.values, i, j, tx, ty)


def sample_monitor_at(field: ScalarField2D, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Vectorized reciprocal-bilinear sampling at many points."""
    g = 1.0 / field.values
    x = np.clip(px, 0.0, 1.0)
    y = np.clip(py, 0.0, 1.0)
    sx = x * (field.nx - 1)
    sy = y * (field.ny - 1)
    i = np.minimum(np.floor(sx).astype(np.intp), field.nx - 2)
    j = np.minimum(np.floor(sy).astype(np.intp), field.ny - 2)
    tx = sx - i
    ty = sy - j
    interp = (
        (1 - tx) * (1 - ty) * g[j, i]
        + tx * (1 - ty) * g[j, i + 1]
        + (1 - tx) * ty * g[j + 1, i]
        + tx * ty * g[j + 1, i + 1]
    )
    return 1.0 / interp


def interior_min_jacobian(grid: Grid2D) -> float:
    from .features import jacobian_determinant

    return float(np.min(jacobian_determinant(grid).values[1:-1, 1:-1]))


def integrate_deformation(pair: MonitorPair, u: VectorField2D, steps: int = 100,
                          backend: str | None = None) -> Grid2D:
    """Deform the identity grid to ``phi(., 1)``.

    Parameters
    ----------
    pair : MonitorPair
        Normalized start and target monitors.
    u : VectorField2D
        Velocity from :func:`deformlab.poisson.velocity_from_monitor`.
    steps : int
        Number of RK4 steps, ``dt = 1 / steps``.
    backend : {"compiled", "numpy"}, optional
        Force a kernel; by default the one chosen at import is used.

    Raises
    ------
    FoldDetected
        If the discrete Jacobian is non-positive at an interior node. The
        grid is attached to the exception.
    """
    if int(steps) != steps or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    if pair.shape != u.shape:
        raise ValueError(f"lattice mismatch: monitors {pair.shape} vs velocity {u.shape}")
    ny, nx = pair.shape
    x0, y0 = reference_coordinates(nx, ny)

    if backend is None:
        kernel, name = _backend.advect, _backend.BACKEND
    elif backend == "numpy":
        kernel, name = _backend.advect_numpy, "numpy"
    elif backend == "compiled":
        kernel, name = _backend.compiled_advect(), "compiled"
        if kernel is None:
            raise RuntimeError("compiled kernel is not available in this installation")
    else:
        raise ValueError(f"unknown backend {backend!r}")

    px, py = kernel(x0, y0, 1.0 / pair.f0.values, 1.0 / pair.f1.values, u.ux, u.uy, int(steps))
    grid = Grid2D(px, py, steps=int(steps), scheme="rk4", metadata={"backend": name})

    jmin = interior_min_jacobian(grid)
    if jmin <= 0.0:
        raise FoldDetected(
            f"grid folded: min interior Jacobian {jmin:.3e}; use more steps or a smaller alpha",
            grid=grid,
            min_jacobian=jmin,
        )
    return grid
