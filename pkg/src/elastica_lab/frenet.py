"""Frenet frames from jets, the frame ODE, and jet synthesis from frame data."""

from .geometry import FrenetFrame, JetState, cross, dot, norm
from .lagrangian import GaugeError

# Below this curvature the normal N = xddot/kappa amplifies noise past usable
# precision at the default step size; frame extraction refuses to proceed.
KAPPA_MIN = 1e-8


class FrameUndefinedError(ValueError):
    """Curvature at or below KAPPA_MIN: no Frenet frame exists here."""


def frenet_frame(j, kappa_min=KAPPA_MIN):
    """Extract (T, N, B, kappa, tau) from an arclength jet.

    T = xdot, N = xddot/kappa, B = T x N, kappa = |xddot|, and
    tau = <xdot cross xddot, xdddot> / kappa^2.
    """
    if not j.is_arclength(tol=1e-6):
        raise GaugeError("frenet_frame needs an arclength jet")
    kappa = norm(j.xddot)
    if kappa <= kappa_min:
        raise FrameUndefinedError(
            f"kappa = {kappa} <= {kappa_min}: use the straight-line branch"
        )
    T = j.xdot / norm(j.xdot)
    N = j.xddot / kappa
    B = cross(T, N)
    tau = dot(cross(j.xdot, j.xddot), j.xdddot) / kappa**2
    return FrenetFrame(T=T, N=N, B=B, kappa=kappa, tau=tau)


def frenet_rhs(f):
    """Frame derivatives (Tdot, Ndot, Bdot) = (kappa N, -kappa T + tau B, -tau N)."""
    return f.kappa * f.N, -f.kappa * f.T + f.tau * f.B, -f.tau * f.N


def jet_from_frame(x, f, kappa_dot, t=0.0):
    """Arclength jet with the given position, frame and curvature rate.

    xdot = T, xddot = kappa N, xdddot = kappa_dot N - kappa^2 T + kappa tau B.
    """
    xddd = kappa_dot * f.N - f.kappa**2 * f.T + f.kappa * f.tau * f.B
    return JetState(t, x, f.T, f.kappa * f.N, xddd)


def fourth_derivative_frame(f, kappa_dot, kappa_ddot, tau_dot):
    """Fourth derivative of a curve expressed in its frame:

    -3 kappa kappa_dot T + (kappa_ddot - kappa^3 - kappa tau^2) N
    + (2 kappa_dot tau + kappa tau_dot) B.
    """
    k, tau = f.kappa, f.tau
    return (
        -3.0 * k * kappa_dot * f.T
        + (kappa_ddot - k**3 - k * tau**2) * f.N
        + (2.0 * kappa_dot * tau + k * tau_dot) * f.B
    )
