"""Numpy implementation of the node advection kernel.

Vectorized over nodes, looping over time steps. Every floating-point
operation is performed in the same order as in ``_advect_core.pyx`` so the
two backends agree bit for bit.
"""
import numpy as np


def _bilinear_weights(x, y, nx, ny):
    sx = x * (nx - 1)
    sy = y * (ny - 1)
    i = np.minimum(np.floor(sx).astype(np.intp), nx - 2)
    j = np.minimum(np.floor(sy).astype(np.intp), ny - 2)
    tx = sx - i
    ty = sy - j
    a = 1.0 - tx
    b = 1.0 - ty
    k = j * nx + i
    return k, a * b, tx * b, a * ty, tx * ty


def _interp(v, k, nx, w00, w10, w01, w11):
    return w00 * v[k] + w10 * v[k + 1] + w01 * v[k + nx] + w11 * v[k + nx + 1]


def _velocity(x, y, t, g0, g1, ux, uy, nx, ny):
    k, w00, w10, w01, w11 = _bilinear_weights(x, y, nx, ny)
    r = (1.0 - t) * _interp(g0, k, nx, w00, w10, w01, w11) + t * _interp(g1, k, nx, w00, w10, w01, w11)
    f = 1.0 / r
    return f * _interp(ux, k, nx, w00, w10, w01, w11), f * _interp(uy, k, nx, w00, w10, w01, w11)


def _project(x, y, x0, y0, fix_x, fix_y):
    x = np.clip(x, 0.0, 1.0)
    y = np.clip(y, 0.0, 1.0)
    x[fix_x] = x0[fix_x]
    y[fix_y] = y0[fix_y]
    return x, y


def advect(x0, y0, g0, g1, ux, uy, steps):
    """Integrate every node from ``t = 0`` to ``t = 1`` with classical RK4.

    Parameters
    ----------
    x0, y0 : (ny, nx) float64
        Start positions (the reference lattice).
    g0, g1 : (ny, nx) float64
        Reciprocals ``1/f0`` and ``1/f1`` at the nodes.
    ux, uy : (ny, nx) float64
        Velocity components at the nodes.
    steps : int
        Number of fixed RK4 steps.
    """
    ny, nx = x0.shape
    g0 = np.ascontiguousarray(g0, dtype=np.float64).ravel()
    g1 = np.ascontiguousarray(g1, dtype=np.float64).ravel()
    ux = np.ascontiguousarray(ux, dtype=np.float64).ravel()
    uy = np.ascontiguousarray(uy, dtype=np.float64).ravel()
    x0f = np.array(x0, dtype=np.float64).ravel()
    y0f = np.array(y0, dtype=np.float64).ravel()

    cols = np.tile(np.arange(nx), ny)
    rows = np.repeat(np.arange(ny), nx)
    fix_x = (cols == 0) | (cols == nx - 1)
    fix_y = (rows == 0) | (rows == ny - 1)

    dt = 1.0 / steps
    half = 0.5 * dt
    sixth = dt / 6.0
    x = x0f.copy()
    y = y0f.copy()
    args = (g0, g1, ux, uy, nx, ny)
    for n in range(steps):
        t = n * dt
        th = t + half
        te = (n + 1) * dt
        k1x, k1y = _velocity(x, y, t, *args)
        xa, ya = _project(x + half * k1x, y + half * k1y, x0f, y0f, fix_x, fix_y)
        k2x, k2y = _velocity(xa, ya, th, *args)
        xb, yb = _project(x + half * k2x, y + half * k2y, x0f, y0f, fix_x, fix_y)
        k3x, k3y = _velocity(xb, yb, th, *args)
        xc, yc = _project(x + dt * k3x, y + dt * k3y, x0f, y0f, fix_x, fix_y)
        k4x, k4y = _velocity(xc, yc, te, *args)
        x, y = _project(
            x + sixth * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
            y + sixth * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            x0f, y0f, fix_x, fix_y,
        )
    return x.reshape(ny, nx), y.reshape(ny, nx)
