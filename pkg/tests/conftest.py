import numpy as np
import pytest

from elastica_lab import frenet, hamiltonian, lagrangian
from elastica_lab.geometry import STANDARD_FRAME, CurveTrace, FrenetFrame, JetState

STEP = 1e-3


def frame_jet(kappa, kappa_dot, tau, x0=(0.0, 0.0, 0.0)):
    T, N, B = STANDARD_FRAME
    f = FrenetFrame(T=T, N=N, B=B, kappa=kappa, tau=tau)
    return frenet.jet_from_frame(np.asarray(x0, dtype=float), f, kappa_dot)


@pytest.fixture(scope="session")
def standard_jet():
    """The reference initial data: kappa=1, kappa_dot=0.3, tau=0.2 at the origin."""
    return frame_jet(1.0, 0.3, 0.2)


@pytest.fixture(scope="session")
def standard_trace(standard_jet):
    """Direct arclength integration of the reference data over s in [0, 10]."""
    return lagrangian.integrate_elastica(standard_jet, STEP, 10000)


@pytest.fixture(scope="session")
def standard_trace_5(standard_trace):
    """The s in [0, 5] head of the reference run."""
    return CurveTrace(
        step=STEP,
        samples=standard_trace.samples[:5001],
        metadata=standard_trace.metadata,
    )


@pytest.fixture(scope="session")
def ham_trace(standard_jet):
    """Constrained Hamiltonian flow from the Legendre image, s in [0, 10]."""
    ps0 = hamiltonian.legendre(standard_jet)
    return hamiltonian.integrate_flow(ps0, STEP, 10000)


@pytest.fixture(scope="session")
def planar_jet():
    return frame_jet(1.0, 0.3, 0.0)


@pytest.fixture(scope="session")
def planar_trace(planar_jet):
    return lagrangian.integrate_elastica(planar_jet, STEP, 5000)


@pytest.fixture(scope="session")
def line_jet():
    T, _, _ = STANDARD_FRAME
    return JetState(0.0, np.zeros(3), T, np.zeros(3), np.zeros(3))


@pytest.fixture(scope="session")
def circle_trace():
    """Unit circle jets: arclength but not a solution of the dynamics."""
    s = np.arange(2001) * STEP
    samples = [
        JetState(
            si,
            [np.cos(si), np.sin(si), 0.0],
            [-np.sin(si), np.cos(si), 0.0],
            [-np.cos(si), -np.sin(si), 0.0],
            [np.sin(si), -np.cos(si), 0.0],
        )
        for si in s
    ]
    return CurveTrace(step=STEP, samples=samples, metadata={"gauge": "arclength"})
