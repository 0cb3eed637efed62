import numpy as np
import pytest

from elastica_lab import ode


def test_constant_flow():
    ts, ys = ode.integrate(lambda t, y: np.zeros_like(y), np.array([2.0, -1.0]), 0.1, 20)
    assert ys.shape == (21, 2)
    np.testing.assert_array_equal(ys, np.tile([2.0, -1.0], (21, 1)))
    np.testing.assert_allclose(np.diff(ts), 0.1)


def test_exponential():
    # y' = y from 1: relative error at t=1 stays under 1e-6 already at h=0.1.
    ts, ys = ode.integrate(lambda t, y: y, np.array([1.0]), 0.1, 10)
    assert abs(ys[-1, 0] - np.e) / np.e <= 1e-6


def test_harmonic_oscillator_energy_drift():
    def rhs(t, y):
        return np.array([y[1], -y[0]])

    _, ys = ode.integrate(rhs, np.array([1.0, 0.0]), 1e-3, 1000)
    energy = 0.5 * (ys[:, 0] ** 2 + ys[:, 1] ** 2)
    assert np.max(np.abs(energy - energy[0])) / energy[0] <= 1e-8


def test_rhs_failure_reports_step_index():
    def rhs(t, y):
        if t > 0.25:
            raise FloatingPointError("boom")
        return y

    with pytest.raises(ode.IntegrationError) as err:
        ode.integrate(rhs, np.array([1.0]), 0.1, 10)
    assert err.value.step_index == 2


@pytest.mark.filterwarnings("ignore:overflow")
def test_nonfinite_state_detected():
    def rhs(t, y):
        return y * 1e200

    with pytest.raises(ode.IntegrationError):
        ode.integrate(rhs, np.array([1.0]), 1.0, 5)


def test_bad_grid_arguments():
    with pytest.raises(ValueError):
        ode.integrate(lambda t, y: y, np.array([1.0]), -0.1, 5)
    with pytest.raises(ValueError):
        ode.integrate(lambda t, y: y, np.array([1.0]), 0.1, 0)


def test_rk4_order():
    hs = [1e-1, 1e-2, 1e-3]
    errs = []
    for h in hs:
        _, ys = ode.integrate(lambda t, y: y, np.array([1.0]), h, int(round(1.0 / h)))
        errs.append(abs(ys[-1, 0] - np.e))
    slope = ode.convergence_slope(hs, errs)
    assert 3.8 <= slope <= 4.2


def test_rk45_matches_exponential_tightly():
    ts, ys = ode.integrate_rk45(lambda t, y: y, np.array([1.0]), 0.1, 10)
    assert ts.shape == (11,)
    assert abs(ys[-1, 0] - np.e) <= 1e-9


def test_rk45_rhs_failure():
    def rhs(t, y):
        raise ValueError("no")

    with pytest.raises(ode.IntegrationError):
        ode.integrate_rk45(rhs, np.array([1.0]), 0.1, 2)


def test_simpson_constant():
    assert ode.simpson(np.ones(11), 0.1) == pytest.approx(1.0, abs=1e-15)


def test_simpson_sine():
    h = np.pi / 100
    y = np.sin(np.arange(101) * h)
    assert abs(ode.simpson(y, h) - 2.0) / 2.0 <= 1e-8


def test_simpson_trailing_even_interval():
    assert ode.simpson(np.ones(4), 1.0) == pytest.approx(3.0, abs=1e-15)


def test_simpson_size_error():
    with pytest.raises(ValueError):
        ode.simpson(np.ones(2), 0.1)


def test_simpson_order():
    hs, errs = [], []
    for n in (10, 100, 1000):
        h = np.pi / n
        y = np.sin(np.arange(n + 1) * h)
        hs.append(h)
        errs.append(abs(ode.simpson(y, h) - 2.0))
    slope = ode.convergence_slope(hs, errs)
    assert 3.8 <= slope <= 4.2


def test_cumulative_simpson_against_analytic():
    h = 2.0 / 200
    x = np.arange(201) * h
    cum = ode.cumulative_simpson(np.cos(x), h)
    np.testing.assert_allclose(cum, np.sin(x), atol=1e-9)


def test_cumulative_simpson_order():
    hs, errs = [], []
    for n in (20, 40, 80, 160):
        h = 2.0 / n
        x = np.arange(n + 1) * h
        cum = ode.cumulative_simpson(np.cos(x), h)
        hs.append(h)
        errs.append(np.max(np.abs(cum - np.sin(x))))
    slope = ode.convergence_slope(hs, errs)
    assert 3.8 <= slope <= 4.2


def test_cumulative_simpson_vector_valued():
    h = 0.01
    x = np.arange(101) * h
    f = np.stack([np.cos(x), 2 * x], axis=1)
    cum = ode.cumulative_simpson(f, h)
    np.testing.assert_allclose(cum[:, 0], np.sin(x), atol=1e-10)
    np.testing.assert_allclose(cum[:, 1], x**2, atol=1e-12)


def test_cumulative_simpson_tiny_inputs():
    np.testing.assert_array_equal(ode.cumulative_simpson(np.array([3.0]), 0.1), [0.0])
    np.testing.assert_allclose(
        ode.cumulative_simpson(np.array([1.0, 3.0]), 0.5), [0.0, 1.0]
    )
