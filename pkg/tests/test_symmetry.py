import numpy as np
import pytest

from elastica_lab import symmetry
from elastica_lab.geometry import JetState
from elastica_lab.symmetry import FieldValidationError, SymmetryField

from conftest import frame_jet

PLANAR = JetState(0.0, [0, 0, 0], [1, 0, 0], [0, 1, 0], [-1, 0, 0])

E1 = SymmetryField.translation([1.0, 0.0, 0.0])
R3 = SymmetryField.rotation([0.0, 0.0, 1.0])
TIME = SymmetryField.time_translation()


def test_construction_rejects_wrong_jacobian():
    with pytest.raises(FieldValidationError):
        SymmetryField(
            tau=lambda t: (0.0, 0.0, 0.0, 0.0),
            xi=lambda t, x: (np.array([x[1], 0.0, 0.0]), np.zeros(3), np.zeros((3, 3))),
        )


def test_construction_rejects_nonaffine_field():
    with pytest.raises(FieldValidationError):
        SymmetryField(
            tau=lambda t: (0.0, 0.0, 0.0, 0.0),
            xi=lambda t, x: (
                np.array([x[0] ** 2, 0.0, 0.0]),
                np.zeros(3),
                np.array([[2 * x[0], 0, 0], [0, 0, 0], [0, 0, 0]]),
            ),
        )


def test_construction_rejects_bad_tau_derivatives():
    with pytest.raises(FieldValidationError):
        SymmetryField(
            tau=lambda t: (np.sin(t), np.sin(t), 0.0, 0.0),
            xi=lambda t, x: (np.zeros(3), np.zeros(3), np.zeros((3, 3))),
        )


def test_exponential_reparametrization_passes_validation():
    X = SymmetryField.reparametrization(
        lambda t: (np.exp(t), np.exp(t), np.exp(t), np.exp(t))
    )
    pr = symmetry.prolong(X, PLANAR)
    assert pr.tau == pytest.approx(1.0)


def test_prolong_translation():
    pr = symmetry.prolong(E1, PLANAR)
    assert pr.tau == 0.0
    np.testing.assert_array_equal(pr.xi0, [1, 0, 0])
    np.testing.assert_array_equal(pr.xi1, np.zeros(3))
    np.testing.assert_array_equal(pr.xi2, np.zeros(3))
    np.testing.assert_array_equal(pr.xi3, np.zeros(3))


def test_prolong_time_translation():
    pr = symmetry.prolong(TIME, PLANAR)
    assert pr.tau == 1.0
    np.testing.assert_array_equal(pr.xi0, np.zeros(3))
    np.testing.assert_array_equal(pr.xi1, np.zeros(3))
    np.testing.assert_array_equal(pr.xi2, np.zeros(3))
    np.testing.assert_array_equal(pr.xi3, np.zeros(3))


def test_prolong_rotation():
    # Linear fields prolong by rotating each jet slot.
    pr = symmetry.prolong(R3, PLANAR)
    np.testing.assert_allclose(pr.xi1, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(pr.xi2, [-1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(pr.xi3, np.cross([0, 0, 1], PLANAR.xdddot), atol=1e-15)


def test_charge_translation():
    assert symmetry.noether_charge(E1, PLANAR) == pytest.approx(-1.0, abs=1e-14)


def test_charge_rotation_is_angular_momentum():
    assert symmetry.noether_charge(R3, PLANAR) == pytest.approx(2.0, abs=1e-14)


def test_charge_time_translation_is_minus_energy():
    assert symmetry.noether_charge(TIME, PLANAR) == pytest.approx(0.0, abs=1e-14)


def test_charge_equals_cartan_contraction():
    rng = np.random.default_rng(23)
    fields = [E1, R3, TIME, SymmetryField.rotation([0.3, -1.0, 0.7])]
    for _ in range(10):
        j = JetState(
            rng.uniform(-1, 1),
            rng.normal(size=3),
            rng.normal(size=3) + [2, 0, 0],
            rng.normal(size=3),
            rng.normal(size=3),
        )
        for X in fields:
            a = symmetry.noether_charge(X, j)
            b = symmetry.cartan_contraction(X, j)
            assert a == pytest.approx(b, abs=1e-12)


def test_charges_constant_along_solutions(standard_trace_5):
    for X in (E1, R3, TIME):
        values = np.array(
            [symmetry.noether_charge(X, j) for j in standard_trace_5.samples[::100]]
        )
        assert np.max(np.abs(values - values[0])) <= 1e-9


def test_charge_derivative_small_on_solutions(standard_trace_5):
    for X in (E1, R3):
        worst = 0.0
        for i in range(10, len(standard_trace_5) - 10, 250):
            jm = symmetry.noether_charge(X, standard_trace_5.samples[i - 1])
            jp = symmetry.noether_charge(X, standard_trace_5.samples[i + 1])
            worst = max(worst, abs(jp - jm) / (2 * standard_trace_5.step))
        assert worst <= 1e-6


def test_offshell_identity_on_circle(circle_trace):
    # Lemma-level identity: holds on any smooth trace, not just solutions.
    for X in (E1, R3, TIME):
        for i in range(5, len(circle_trace) - 5, 200):
            assert abs(symmetry.noether_identity_residual(X, circle_trace, i)) <= 1e-6


def test_offshell_identity_terms_on_solutions(standard_trace_5):
    for i in (10, 2500, 4990):
        res = symmetry.noether_identity_residual(R3, standard_trace_5, i)
        assert abs(res) <= 1e-6


def test_offshell_identity_general_parametrization():
    # The identity is parametrization-agnostic: a circle traversed at speed 2.
    from elastica_lab.geometry import CurveTrace

    h = 1e-3
    u = np.arange(801) * h
    samples = [
        JetState(
            ui,
            [np.cos(2 * ui), np.sin(2 * ui), 0.0],
            [-2 * np.sin(2 * ui), 2 * np.cos(2 * ui), 0.0],
            [-4 * np.cos(2 * ui), -4 * np.sin(2 * ui), 0.0],
            [8 * np.sin(2 * ui), -8 * np.cos(2 * ui), 0.0],
        )
        for ui in u
    ]
    trace = CurveTrace(step=h, samples=samples)
    for X in (E1, R3, TIME):
        for i in (5, 400, 795):
            assert abs(symmetry.noether_identity_residual(X, trace, i)) <= 1e-6


def test_identity_zero_on_line_with_constant_field(line_jet):
    from elastica_lab import lagrangian

    trace = lagrangian.integrate_elastica(line_jet, 1e-3, 100)
    assert symmetry.noether_identity_residual(E1, trace, 50) == 0.0


def test_identity_stencil_bounds(circle_trace):
    with pytest.raises(IndexError):
        symmetry.noether_identity_residual(E1, circle_trace, 0)


def test_boundary_slot_shifts_charge():
    # Symmetry-up-to-a-differential support: the charge gains exactly F(j).
    a = np.array([0.2, -0.5, 1.0])
    F = lambda j: float(np.dot(a, j.x))
    j = frame_jet(1.0, 0.3, 0.2, x0=[1.0, 2.0, -0.5])
    base = symmetry.noether_charge(R3, j)
    shifted = symmetry.noether_charge(R3, j, boundary=F)
    assert shifted - base == pytest.approx(F(j), abs=1e-14)


def test_reparametrization_charge_vanishes_on_solutions(standard_trace_5):
    # J for tau(t) d/dt reduces to -tau H - tau_dot <p_xdot, xdot>, zero on
    # arclength solutions.
    X = SymmetryField.reparametrization(
        lambda t: (np.exp(t), np.exp(t), np.exp(t), np.exp(t))
    )
    for j in standard_trace_5.samples[::500]:
        assert abs(symmetry.noether_charge(X, j)) <= 1e-10
