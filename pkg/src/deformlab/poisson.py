"""Neumann Poisson solve and the curl-free velocity field.

The Laplacian is the 5-point stencil on the node lattice with ghost nodes
mirrored across each wall (``w[-1] = w[1]``), which imposes ``dw/dn = 0``.
That operator is diagonalized exactly by the type-I discrete cosine
transform, so the default solver is direct. A conjugate-gradient route is
kept for cross-checking and for the ``--max-iter`` budget.

The mirrored operator is solvable only for right-hand sides whose
trapezoid-weighted mean vanishes; monitors are normalized with the same
weights, so ``1/f0 - 1/f1`` is compatible up to rounding.
"""
from __future__ import annotations

import numpy as np
from scipy import fft, sparse
from scipy.sparse import linalg as spla

from .errors import IncompatibleRHS, SolverDiverged
from .fields import ScalarField2D, VectorField2D, discrete_mean, node_weights
from .monitor import MonitorPair, reciprocal_rate

__all__ = [
    "solve_neumann_poisson",
    "velocity_from_monitor",
    "laplacian",
    "gradient",
    "divergence",
    "curl",
    "project_rhs",
    "COMPAT_TOL",
]

COMPAT_TOL = 1e-8




def laplacian(w: np.ndarray, hx: float, hy: float) -> np.ndarray:
    """5-point Laplacian with mirrored ghost nodes, evaluated at every node."""
    p = np.pad(w, 1, mode="reflect")
    c = p[1:-1, 1:-1]
    dxx = (p[1:-1, 2:] - 2.0 * c + p[1:-1, :-2]) / (hx * hx)
    dyy = (p[2:, 1:-1] - 2.0 * c + p[:-2, 1:-1]) / (hy * hy)
    return dxx + dyy


def gradient(w: np.ndarray, hx: float, hy: float) -> tuple[np.ndarray, np.ndarray]:
    """Central-difference gradient; the wall-normal component is exactly 0."""
    p = np.pad(w, 1, mode="reflect")
    gx = (p[1:-1, 2:] - p[1:-1, :-2]) / (2.0 * hx)
    gy = (p[2:, 1:-1] - p[:-2, 1:-1]) / (2.0 * hy)
    return gx, gy


def divergence(u: VectorField2D) -> np.ndarray:
    """Central-difference divergence at interior nodes, shape ``(ny-2, nx-2)``."""
    hx, hy = 1.0 / (u.nx - 1), 1.0 / (u.ny - 1)
    dux = (u.ux[1:-1, 2:] - u.ux[1:-1, :-2]) / (2.0 * hx)
    duy = (u.uy[2:, 1:-1] - u.uy[:-2, 1:-1]) / (2.0 * hy)
    return dux + duy


def curl(u: VectorField2D) -> np.ndarray:
    """Central-difference ``d(uy)/dx - d(ux)/dy`` at interior nodes."""
    hx, hy = 1.0 / (u.nx - 1), 1.0 / (u.ny - 1)
    duy_dx = (u.uy[1:-1, 2:] - u.uy[1:-1, :-2]) / (2.0 * hx)
    dux_dy = (u.ux[2:, 1:-1] - u.ux[:-2, 1:-1]) / (2.0 * hy)
    return duy_dx - dux_dy


def project_rhs(rhs: np.ndarray) -> np.ndarray:
    """Remove the (rounding-level) weighted mean so the system is consistent."""
    return rhs - discrete_mean(rhs)


def _solve_dct(r: np.ndarray, hx: float, hy: float) -> np.ndarray:
    ny, nx = r.shape
    coef = fft.dctn(r, type=1)
    lam_x = (2.0 * np.cos(np.pi * np.arange(nx) / (nx - 1)) - 2.0) / (hx * hx)
    lam_y = (2.0 * np.cos(np.pi * np.arange(ny) / (ny - 1)) - 2.0) / (hy * hy)
    lam = lam_y[:, None] + lam_x[None, :]
    lam[0, 0] = 1.0
    coef[0, 0] = 0.0
    return fft.idctn(coef / lam, type=1)


def _neumann_matrix_1d(n: int, h: float) -> sparse.csr_matrix:
    main = np.full(n, -2.0)
    upper = np.ones(n - 1)
    lower = np.ones(n - 1)
    upper[0] = 2.0
    lower[-1] = 2.0
    return sparse.diags([lower, main, upper], [-1, 0, 1], format="csr") / (h * h)


def _solve_cg(r: np.ndarray, hx: float, hy: float, max_iter: int) -> np.ndarray:
    ny, nx = r.shape
    lap = sparse.kron(sparse.eye(ny), _neumann_matrix_1d(nx, hx)) + sparse.kron(
        _neumann_matrix_1d(ny, hy), sparse.eye(nx)
    )
    # weighting by the trapezoid rule makes -lap symmetric positive semidefinite
    weights = node_weights(ny, nx).ravel()
    op = (-sparse.diags(weights) @ lap).tocsr()
    b = -weights * r.ravel()
    w, _info = spla.cg(op, b, rtol=1e-15, atol=0.0, maxiter=max_iter)
    return w.reshape(ny, nx)


def solve_neumann_poisson(
    rhs: ScalarField2D,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    method: str = "dct",
) -> ScalarField2D:
    """Solve ``lap(w) = rhs`` with ``dw/dn = 0`` and ``mean(w) = 0``.

    Parameters
    ----------
    rhs : ScalarField2D
        Right-hand side; its weighted mean must vanish to within ``1e-8``.
    tol : float
        Bound on the max-norm residual, relative to
        ``max(1, max|rhs|)``.
    max_iter : int
        Iteration budget for ``method="cg"``; unused by the direct solver.
    method : {"dct", "cg"}

    Raises
    ------
    IncompatibleRHS
        If the weighted mean of ``rhs`` exceeds the compatibility tolerance.
    SolverDiverged
        If the final residual exceeds ``tol``.
    """
    r = rhs.values
    mean = discrete_mean(r)
    if abs(mean) > COMPAT_TOL:
        raise IncompatibleRHS(f"Neumann problem needs a zero-mean right-hand side, mean = {mean:.3e}")
    hx, hy = rhs.hx, rhs.hy
    if not np.any(r):
        return ScalarField2D(np.zeros_like(r))
    projected = project_rhs(r)
    if method == "dct":
        w = _solve_dct(projected, hx, hy)
    elif method == "cg":
        w = _solve_cg(projected, hx, hy, max_iter)
    else:
        raise ValueError(f"unknown solver method {method!r}")
    w = w - discrete_mean(w)

    residual = np.max(np.abs(laplacian(w, hx, hy) - projected))
    scale = max(1.0, float(np.max(np.abs(r))))
    if not np.isfinite(residual) or residual > tol * scale:
        raise SolverDiverged(f"{method} solve reached residual {residual:.3e} > {tol * scale:.3e}")
    return ScalarField2D(w)


def velocity_from_monitor(pair: MonitorPair, tol: float = 1e-10, max_iter: int = 10_000,
                          method: str = "dct") -> VectorField2D:
    """Curl-free velocity ``u = grad(w)`` with ``div u = 1/f0 - 1/f1``."""
    rhs = reciprocal_rate(pair)
    w = solve_neumann_poisson(rhs, tol=tol, max_iter=max_iter, method=method)
    ux, uy = gradient(w.values, w.hx, w.hy)
    return VectorField2D(ux, uy)
