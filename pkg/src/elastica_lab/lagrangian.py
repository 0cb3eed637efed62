"""The curvature-squared Lagrangian: density, momenta, energy, dynamics.

All formulas are for curves in R^3.  The density in an arbitrary
parametrization is

    L = |xddot|^2 / |xdot|^3 - <xdot, xddot>^2 / |xdot|^5,

which equals kappa^2 |xdot|.  Dynamics are integrated in the arclength gauge
only; the undetermined parallel part of the fourth derivative is fixed there
by differentiating the arclength conditions.
"""

import numpy as np

from . import ode
from .geometry import ConservedSet, CurveTrace, JetState, cross, dot, norm


class DomainError(ValueError):
    """The Lagrangian side is undefined at this point (xdot = 0)."""


class GaugeError(ValueError):
    """An arclength-gauge operation was fed a non-arclength jet."""


# How far a jet may sit off the arclength submanifold and still be accepted
# by the arclength-gauge operations.  Looser than construction-level checks
# so integrated traces with accumulated drift remain usable.
ARCLENGTH_TOL = 1e-6


def _speed(j):
    v = norm(j.xdot)
    if not v > 0.0:
        raise DomainError("xdot = 0: off the domain of the Lagrangian")
    return v


def _require_arclength(j):
    if not j.is_arclength(tol=ARCLENGTH_TOL):
        raise GaugeError(
            f"jet violates arclength conditions: defects {j.arclength_defects()}"
        )


def lagrangian_density(j):
    """L = |xddot|^2/|xdot|^3 - <xdot,xddot>^2/|xdot|^5."""
    v = _speed(j)
    return dot(j.xddot, j.xddot) / v**3 - dot(j.xdot, j.xddot) ** 2 / v**5


def ostrogradski_momenta(j):
    """Canonical momenta (p_x, p_xdot) of the second-order problem.

    p_xdot = 2 xddot_perp / |xdot|^3  (perp taken against xdot), and
    p_x    = -2 xdddot_perp / |xdot|^3 + 6 <xdot,xddot> xddot_perp / |xdot|^5
             - |xddot_perp|^2 xdot / |xdot|^5.
    """
    v = _speed(j)
    xd, xdd, xddd = j.xdot, j.xddot, j.xdddot
    v2 = v * v
    xdd_perp = xdd - (dot(xd, xdd) / v2) * xd
    # Second projection pass: kills the O(eps) parallel remainder so the
    # constraint <p_xdot, xdot> = 0 holds to ~eps^2, not just ~eps.
    xdd_perp = xdd_perp - (dot(xd, xdd_perp) / v2) * xd
    xddd_perp = xddd - (dot(xd, xddd) / v2) * xd
    p_xdot = 2.0 * xdd_perp / v**3
    p_x = (
        -2.0 * xddd_perp / v**3
        + 6.0 * dot(xd, xdd) * xdd_perp / v**5
        - dot(xdd_perp, xdd_perp) * xd / v**5
    )
    return p_x, p_xdot


def energy(j):
    """H = <p_x, xdot> + <p_xdot, xddot> - L; zero on every solution."""
    p_x, p_xdot = ostrogradski_momenta(j)
    return dot(p_x, j.xdot) + dot(p_xdot, j.xddot) - lagrangian_density(j)


def el_rhs_arclength(j):
    """Fourth derivative of an arclength solution.

    x'''' = -(3/2)|xddot|^2 xddot - 3 <xddot, xdddot> xdot.
    """
    _require_arclength(j)
    return -1.5 * dot(j.xddot, j.xddot) * j.xddot - 3.0 * dot(
        j.xddot, j.xdddot
    ) * j.xdot


def el_residual(trace, index):
    """Finite-difference Euler-Lagrange residual at an interior sample.

    The density has no explicit x dependence, so the residual collapses to
    -(d/dt) p_x, evaluated with a second-order central difference of the
    analytic momentum along the trace.
    """
    n = len(trace)
    if index < 2 or index > n - 3:
        raise IndexError(f"index {index} leaves no room for a centered stencil")
    p_prev, _ = ostrogradski_momenta(trace.samples[index - 1])
    p_next, _ = ostrogradski_momenta(trace.samples[index + 1])
    return -(p_next - p_prev) / (2.0 * trace.step)


def conserved_momenta(j):
    """All conserved quantities of an arclength jet.

    p = -2 xdddot - 3 |xddot|^2 xdot,  l = x cross p + 2 xdot cross xddot,
    H is the energy, and c = kappa^2 tau = <xdot cross xddot, xdddot>
    (the kappa^-2 in tau cancels, so c needs no curvature floor).
    """
    _require_arclength(j)
    p = -2.0 * j.xdddot - 3.0 * dot(j.xddot, j.xddot) * j.xdot
    l = cross(j.x, p) + 2.0 * cross(j.xdot, j.xddot)
    c = dot(cross(j.xdot, j.xddot), j.xdddot)
    return ConservedSet(p=p, l=l, H=energy(j), c=c)


def project_arclength(j):
    """Nearest jet satisfying the arclength conditions exactly.

    xdot is normalized, xddot loses its tangential part, and the tangential
    part of xdddot is set to -|xddot|^2 xdot.  Idempotent.
    """
    v = _speed(j)
    t_hat = j.xdot / v
    xdd = j.xddot - dot(j.xddot, t_hat) * t_hat
    xdd = xdd - dot(xdd, t_hat) * t_hat
    xddd_perp = j.xdddot - dot(j.xdddot, t_hat) * t_hat
    xddd = xddd_perp - dot(xdd, xdd) * t_hat
    return JetState(j.t, j.x, t_hat, xdd, xddd)


def _flat_rhs(t, y):
    xd = y[3:6]
    xdd = y[6:9]
    xddd = y[9:12]
    x4 = -1.5 * np.dot(xdd, xdd) * xdd - 3.0 * np.dot(xdd, xddd) * xd
    return np.concatenate([xd, xdd, xddd, x4])


def integrate_elastica(j0, step, count, method="rk4"):
    """Integrate the arclength dynamics from an arclength jet.

    Returns a CurveTrace of JetState samples spaced by `step`.
    """
    _require_arclength(j0)
    integrator = ode.integrate if method == "rk4" else ode.integrate_rk45
    ts, ys = integrator(_flat_rhs, j0.to_array(), step, count, t0=j0.t)
    samples = [JetState.from_array(t, y) for t, y in zip(ts, ys)]
    return CurveTrace(
        step=step, samples=samples, metadata={"gauge": "arclength", "integrator": method}
    )
