"""JD and CV feature maps of a deformation, and their rendering to images."""
from __future__ import annotations

import numpy as np

from .deform import integrate_deformation
from .errors import NonFiniteField
from .fields import Grid2D, ScalarField2D, as_gray_image
from .monitor import MonitorPair, image_to_monitor
from .poisson import velocity_from_monitor

__all__ = [
    "jacobian_determinant",
    "curl_of_map",
    "render_feature_image",
    "deform_image",
    "jd_feature_map",
    "cv_feature_map",
]


def _derivatives(a: np.ndarray, hx: float, hy: float) -> tuple[np.ndarray, np.ndarray]:
    # central in the interior, first-order one-sided on the boundary
    d_eta, d_xi = np.gradient(a, hy, hx)
    return d_xi, d_eta


def jacobian_determinant(grid: Grid2D) -> ScalarField2D:
    """``x_xi * y_eta - x_eta * y_xi`` w.r.t. the reference lattice spacing."""
    hx, hy = 1.0 / (grid.nx - 1), 1.0 / (grid.ny - 1)
    x_xi, x_eta = _derivatives(grid.px, hx, hy)
    y_xi, y_eta = _derivatives(grid.py, hx, hy)
    return ScalarField2D(x_xi * y_eta - x_eta * y_xi)


def curl_of_map(grid: Grid2D) -> ScalarField2D:
    """Scalar curl ``d(dy)/dxi - d(dx)/deta`` of the displacement ``phi - xi``."""
    hx, hy = 1.0 / (grid.nx - 1), 1.0 / (grid.ny - 1)
    dx, dy = grid.displacement()
    dy_xi, _ = _derivatives(dy, hx, hy)
    _, dx_eta = _derivatives(dx, hx, hy)
    return ScalarField2D(dy_xi - dx_eta)


def render_feature_image(field: ScalarField2D | np.ndarray) -> np.ndarray:
    """Min-max map a field onto ``0..255`` (round half up); constants give 128."""
    values = field.values if isinstance(field, ScalarField2D) else np.asarray(field, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise NonFiniteField("cannot render a field with non-finite values")
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.full(values.shape, 128, dtype=np.uint8)
    scaled = (values - lo) / (hi - lo) * 255.0
    return np.clip(np.floor(scaled + 0.5), 0, 255).astype(np.uint8)


def deform_image(img, alpha: float = 1.0, steps: int = 100, tol: float = 1e-10,
                 max_iter: int = 10_000, method: str = "dct") -> tuple[Grid2D, MonitorPair]:
    """Run the deformation for an image-derived target monitor.

    Returns the deformed grid and the monitor pair it realizes.
    """
    f1 = image_to_monitor(as_gray_image(img), alpha)
    pair = MonitorPair(ScalarField2D(np.ones(f1.shape)), f1)
    u = velocity_from_monitor(pair, tol=tol, max_iter=max_iter, method=method)
    return integrate_deformation(pair, u, steps), pair


def jd_feature_map(img, alpha: float = 1.0, steps: int = 100, **solver) -> ScalarField2D:
    grid, _ = deform_image(img, alpha, steps, **solver)
    return jacobian_determinant(grid)


def cv_feature_map(img, alpha: float = 1.0, steps: int = 100, **solver) -> ScalarField2D:
    """CV map of an image: monitor, velocity, deformation, displacement curl."""
    grid, _ = deform_image(img, alpha, steps, **solver)
    return curl_of_map(grid)
