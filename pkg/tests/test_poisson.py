import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformlab.errors import IncompatibleRHS, SolverDiverged
from deformlab.fields import ScalarField2D, discrete_mean, reference_coordinates
from deformlab.monitor import MonitorPair, reciprocal_rate
from deformlab.poisson import curl, divergence, solve_neumann_poisson, velocity_from_monitor
from tests.helpers import radial_monitor


def mirrored_laplacian_loop(w, hx, hy):
    """Node-by-node 5-point Laplacian, ghost values mirrored across walls."""
    ny, nx = w.shape

    def at(j, i):
        j = -j if j < 0 else (2 * (ny - 1) - j if j > ny - 1 else j)
        i = -i if i < 0 else (2 * (nx - 1) - i if i > nx - 1 else i)
        return w[j, i]

    out = np.empty_like(w)
    for j in range(ny):
        for i in range(nx):
            out[j, i] = (at(j, i + 1) - 2 * at(j, i) + at(j, i - 1)) / hx**2 + (
                at(j + 1, i) - 2 * at(j, i) + at(j - 1, i)
            ) / hy**2
    return out


def manufactured(n):
    x, y = reference_coordinates(n, n)
    exact = np.cos(np.pi * x) * np.cos(np.pi * y)
    return -2 * np.pi**2 * exact, exact - discrete_mean(exact)


def zero_mean_perturbation(rng, shape):
    r = rng.normal(size=shape)
    return r - discrete_mean(r)


def test_zero_rhs_gives_zero():
    w = solve_neumann_poisson(ScalarField2D(np.zeros((9, 9))))
    assert np.all(w.values == 0.0)


def test_nonzero_mean_rejected():
    with pytest.raises(IncompatibleRHS):
        solve_neumann_poisson(ScalarField2D(np.ones((9, 9))))


@pytest.mark.parametrize("method", ["dct", "cg"])
def test_manufactured_solution_second_order(method):
    errors = []
    for n in (17, 33, 65):
        rhs, exact = manufactured(n)
        w = solve_neumann_poisson(ScalarField2D(rhs), method=method).values
        errors.append(np.max(np.abs(w - exact)))
    ratios = [errors[k] / errors[k + 1] for k in range(2)]
    assert all(3.0 <= r <= 5.0 for r in ratios), ratios
    assert errors[-1] < 0.25 * (1 / 64) ** 2 * 2 * np.pi**2


def test_residual_against_loop_oracle(rng):
    rhs = zero_mean_perturbation(rng, (11, 14))
    field = ScalarField2D(rhs)
    w = solve_neumann_poisson(field).values
    residual = mirrored_laplacian_loop(w, field.hx, field.hy) - rhs
    assert np.max(np.abs(residual)) < 1e-10 * max(1.0, np.max(np.abs(rhs)))
    assert abs(discrete_mean(w)) < 1e-14


def test_cg_agrees_with_dct(rng):
    rhs = ScalarField2D(zero_mean_perturbation(rng, (20, 13)))
    w_dct = solve_neumann_poisson(rhs, method="dct").values
    w_cg = solve_neumann_poisson(rhs, method="cg").values
    np.testing.assert_allclose(w_cg, w_dct, atol=1e-9)


def test_cg_budget_exhausted(rng):
    rhs = ScalarField2D(zero_mean_perturbation(rng, (20, 20)))
    with pytest.raises(SolverDiverged):
        solve_neumann_poisson(rhs, method="cg", max_iter=2)


def test_equal_monitors_give_zero_velocity(rng):
    raw = rng.uniform(1, 2, (10, 10))
    pair = MonitorPair.from_raw(raw, raw)
    u = velocity_from_monitor(pair)
    assert np.all(u.ux == 0) and np.all(u.uy == 0)


def test_velocity_points_toward_contracting_center():
    n = 33
    pair = MonitorPair.from_raw(radial_monitor(n, dip=True))
    c = n // 2
    assert pair.f1.values[c, c] < 1.0
    u = velocity_from_monitor(pair)
    assert u.ux[c, c + 1] < 0 and u.ux[c, c - 1] > 0
    assert u.uy[c + 1, c] < 0 and u.uy[c - 1, c] > 0


def test_normal_velocity_is_exactly_zero_on_walls(rng):
    pair = MonitorPair.from_raw(rng.uniform(1, 3, (12, 15)))
    u = velocity_from_monitor(pair)
    assert np.all(u.ux[:, 0] == 0) and np.all(u.ux[:, -1] == 0)
    assert np.all(u.uy[0, :] == 0) and np.all(u.uy[-1, :] == 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 40), st.integers(3, 40), st.integers(0, 2**32 - 1))
def test_velocity_is_curl_free(nx, ny, seed):
    rng = np.random.default_rng(seed)
    pair = MonitorPair.from_raw(rng.uniform(0.5, 4, (ny, nx)), rng.uniform(0.5, 4, (ny, nx)))
    assert np.max(np.abs(curl(velocity_from_monitor(pair))), initial=0.0) <= 1e-12


def test_potential_matches_rate_through_compact_laplacian(rng):
    pair = MonitorPair.from_raw(rng.uniform(1, 3, (17, 17)))
    rate = reciprocal_rate(pair)
    w = solve_neumann_poisson(rate)
    lap = mirrored_laplacian_loop(w.values, w.hx, w.hy)
    np.testing.assert_allclose(lap[1:-1, 1:-1], rate.values[1:-1, 1:-1], atol=1e-8)


def test_central_divergence_converges_to_rate():
    # central div of a central gradient is a wide-stencil Laplacian, so it
    # only agrees with the rate up to O(h^2)
    errors = []
    for n in (33, 65, 129):
        pair = MonitorPair.from_raw(radial_monitor(n))
        u = velocity_from_monitor(pair)
        errors.append(np.max(np.abs(divergence(u) - reciprocal_rate(pair).values[1:-1, 1:-1])))
    assert 3.0 < errors[0] / errors[1] < 5.0
    assert 3.0 < errors[1] / errors[2] < 5.0


def test_velocity_linear_in_rate(rng):
    shape = (14, 14)
    r = zero_mean_perturbation(rng, shape) * 0.1
    f1_a = ScalarField2D(1.0 / (1.0 - r))
    f1_b = ScalarField2D(1.0 / (1.0 - 0.5 * r))
    ones = ScalarField2D(np.ones(shape))
    u_a = velocity_from_monitor(MonitorPair(ones, f1_a))
    u_b = velocity_from_monitor(MonitorPair(ones, f1_b))
    np.testing.assert_allclose(u_b.ux, 0.5 * u_a.ux, atol=1e-10)
    np.testing.assert_allclose(u_b.uy, 0.5 * u_a.uy, atol=1e-10)
