import numpy as np
import pytest

from elastica_lab import diagnostics, lagrangian, ode, scalar
from elastica_lab.scalar import SingularTorsionError

from conftest import frame_jet


def test_torsion_from_c():
    assert scalar.torsion_from_c(1.0, 0.0) == 0.0
    assert scalar.torsion_from_c(0.5, 0.125) == pytest.approx(0.5)
    assert scalar.torsion_from_c(0.0, 0.0) == 0.0
    with pytest.raises(SingularTorsionError):
        scalar.torsion_from_c(1e-9, 1.0)


def test_scalar_rhs_values():
    assert scalar.scalar_rhs(1.0, 0.0, 0.0) == (0.0, pytest.approx(-0.5))
    # Constant-curvature helix balance: kappa^3/2 = c^2/kappa^3.
    _, kdd = scalar.scalar_rhs(1.0, 0.0, 1.0 / np.sqrt(2.0))
    assert kdd == pytest.approx(0.0, abs=1e-15)
    assert scalar.scalar_rhs(2.0, 1.0, 0.0) == (1.0, pytest.approx(-4.0))
    with pytest.raises(SingularTorsionError):
        scalar.scalar_rhs(1e-9, 0.0, 0.5)


def test_first_integral_values():
    assert scalar.first_integral(1.0, 0.0, 0.0) == pytest.approx(0.25)
    assert scalar.first_integral(0.5, 0.0, 0.125) == pytest.approx(0.078125)
    with pytest.raises(SingularTorsionError):
        scalar.first_integral(1e-9, 0.0, 0.5)


def test_first_integral_drift():
    c = 0.2
    _, kappa, kappa_dot = scalar.integrate_scalar(1.0, 0.3, c, 1e-3, 10000)
    fi = kappa_dot**2 + 0.25 * kappa**4 + c**2 / kappa**2
    assert np.max(np.abs(fi - fi[0])) / abs(fi[0]) <= 1e-8


def test_constants_from_momenta():
    cs = lagrangian.conserved_momenta(frame_jet(1.0, 0.0, 0.0))
    c, level = scalar.constants_from_momenta(cs)
    assert c == pytest.approx(0.0, abs=1e-15)
    assert level == pytest.approx(0.25, abs=1e-14)


def test_zero_momentum_forces_flat_level(line_jet):
    cs = lagrangian.conserved_momenta(line_jet)
    c, level = scalar.constants_from_momenta(cs)
    assert c == 0.0
    assert level == 0.0


def test_first_integral_equals_momentum_level(standard_trace_5):
    p, l, _, _ = diagnostics.momentum_arrays(standard_trace_5)
    kappa, kappa_dot, _ = diagnostics.curvature_arrays(standard_trace_5)
    c = -0.25 * float(np.dot(l[0], p[0]))
    level = 0.25 * float(np.dot(p[0], p[0]))
    fi = kappa_dot**2 + 0.25 * kappa**4 + c**2 / kappa**2
    assert np.max(np.abs(fi - level)) <= 1e-8


def test_scalar_curvature_matches_full_integration(standard_trace_5):
    kappa3d, _, _ = diagnostics.curvature_arrays(standard_trace_5)
    _, kappa, _ = scalar.integrate_scalar(1.0, 0.3, 0.2, 1e-3, 5000)
    assert np.max(np.abs(kappa - kappa3d)) <= 1e-6


def test_planar_branch_crosses_zero():
    # c = 0 runs the signed-curvature equation straight through kappa = 0.
    _, kappa, _ = scalar.integrate_scalar(1.0, 0.3, 0.0, 1e-3, 5000)
    assert kappa.min() < -0.1
    assert np.sum(np.abs(np.diff(np.sign(kappa))) > 0) >= 1


def test_nonzero_c_keeps_kappa_bounded_away_from_zero():
    _, kappa, _ = scalar.integrate_scalar(1.0, 0.3, 0.2, 1e-3, 10000)
    assert kappa.min() > 0.3


def test_integrate_scalar_failure_at_floor():
    with pytest.raises(ode.IntegrationError):
        scalar.integrate_scalar(1e-9, 0.0, 0.5, 1e-3, 10)
