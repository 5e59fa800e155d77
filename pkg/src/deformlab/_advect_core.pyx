# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled node advection kernel.

One RK4 step is applied to every node before the next step begins, the
same schedule as ``_advect_py.py``, whose per-node operation order is
mirrored exactly.
"""
import numpy as np


cdef inline double _interp(const double* v, Py_ssize_t k, Py_ssize_t nx,
                           double w00, double w10, double w01, double w11) noexcept nogil:
    return w00 * v[k] + w10 * v[k + 1] + w01 * v[k + nx] + w11 * v[k + nx + 1]


cdef inline void _velocity(double x, double y, double t,
                           const double* g0, const double* g1,
                           const double* ux, const double* uy,
                           Py_ssize_t nx, Py_ssize_t ny,
                           double* vx, double* vy) noexcept nogil:
    cdef double sx = x * (nx - 1)
    cdef double sy = y * (ny - 1)
    # positions are clamped to [0, 1], so truncation is floor
    cdef Py_ssize_t i = <Py_ssize_t>sx
    cdef Py_ssize_t j = <Py_ssize_t>sy
    if i > nx - 2:
        i = nx - 2
    if j > ny - 2:
        j = ny - 2
    cdef double tx = sx - <double>i
    cdef double ty = sy - <double>j
    cdef double a = 1.0 - tx
    cdef double b = 1.0 - ty
    cdef double w00 = a * b
    cdef double w10 = tx * b
    cdef double w01 = a * ty
    cdef double w11 = tx * ty
    cdef Py_ssize_t k = j * nx + i
    cdef double r = (1.0 - t) * _interp(g0, k, nx, w00, w10, w01, w11) + t * _interp(g1, k, nx, w00, w10, w01, w11)
    cdef double f = 1.0 / r
    vx[0] = f * _interp(ux, k, nx, w00, w10, w01, w11)
    vy[0] = f * _interp(uy, k, nx, w00, w10, w01, w11)


cdef inline double _clip(double v) noexcept nogil:
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


def advect(x0, y0, g0, g1, ux, uy, int steps):
    """Integrate every node from t = 0 to t = 1 with classical RK4."""
    cdef Py_ssize_t ny = x0.shape[0]
    cdef Py_ssize_t nx = x0.shape[1]
    cdef const double[::1] g0v = np.ascontiguousarray(g0, dtype=np.float64).ravel()
    cdef const double[::1] g1v = np.ascontiguousarray(g1, dtype=np.float64).ravel()
    cdef const double[::1] uxv = np.ascontiguousarray(ux, dtype=np.float64).ravel()
    cdef const double[::1] uyv = np.ascontiguousarray(uy, dtype=np.float64).ravel()
    cdef const double[::1] x0v = np.ascontiguousarray(x0, dtype=np.float64).ravel()
    cdef const double[::1] y0v = np.ascontiguousarray(y0, dtype=np.float64).ravel()
    out_x = np.empty(nx * ny, dtype=np.float64)
    out_y = np.empty(nx * ny, dtype=np.float64)
    cdef double[::1] ox = out_x
    cdef double[::1] oy = out_y
    cdef const double* pg0 = &g0v[0]
    cdef const double* pg1 = &g1v[0]
    cdef const double* pux = &uxv[0]
    cdef const double* puy = &uyv[0]

    cdef double dt = 1.0 / steps
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef Py_ssize_t node, row, col
    cdef int n
    cdef bint fix_x, fix_y
    cdef double x, y, t, th, te
    cdef double xs, ys
    cdef double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y

    with nogil:
        for node in range(nx * ny):
            ox[node] = x0v[node]
            oy[node] = y0v[node]
        # steps outermost: consecutive nodes are independent, so their
        # dependency chains overlap in the pipeline
        for n in range(steps):
            t = n * dt
            th = t + half
            te = (n + 1) * dt
            for row in range(ny):
                fix_y = row == 0 or row == ny - 1
                for col in range(nx):
                    node = row * nx + col
                    fix_x = col == 0 or col == nx - 1
                    x = ox[node]
                    y = oy[node]
                    _velocity(x, y, t, pg0, pg1, pux, puy, nx, ny, &k1x, &k1y)
                    xs = x0v[node] if fix_x else _clip(x + half * k1x)
                    ys = y0v[node] if fix_y else _clip(y + half * k1y)
                    _velocity(xs, ys, th, pg0, pg1, pux, puy, nx, ny, &k2x, &k2y)
                    xs = x0v[node] if fix_x else _clip(x + half * k2x)
                    ys = y0v[node] if fix_y else _clip(y + half * k2y)
                    _velocity(xs, ys, th, pg0, pg1, pux, puy, nx, ny, &k3x, &k3y)
                    xs = x0v[node] if fix_x else _clip(x + dt * k3x)
                    ys = y0v[node] if fix_y else _clip(y + dt * k3y)
                    _velocity(xs, ys, te, pg0, pg1, pux, puy, nx, ny, &k4x, &k4y)
                    xs = x + sixth * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
                    ys = y + sixth * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
                    ox[node] = x0v[node] if fix_x else _clip(xs)
                    oy[node] = y0v[node] if fix_y else _clip(ys)
    return out_x.reshape(ny, nx), out_y.reshape(ny, nx)
