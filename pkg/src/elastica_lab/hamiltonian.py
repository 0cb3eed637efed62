"""Legendre transform to the cotangent bundle of the first jets, the
constraint manifold, and the constrained Hamiltonian flow.

The image of the transform is the common zero set of three functions:

    p_t,   <p_xdot, xdot>,   h = |xdot|^2 <p_xdot,p_xdot>/4 + <p_x,xdot>/|xdot|,

all with pairwise-vanishing Poisson brackets (the constraint set is
coisotropic).  On it, the arclength-normalized flow is linear-quadratic:

    dx/ds = xdot,  dxdot/ds = p_xdot/2,
    dp_xdot/ds = -p_x + 3 <p_x, xdot> xdot,  dp_x/ds = 0,  dt/ds = 1.
"""

from dataclasses import dataclass

import numpy as np

from . import ode
from .geometry import CurveTrace, JetState, PhaseState, cross, dot, norm, vec3
from .lagrangian import DomainError, ostrogradski_momenta

# Residual size beyond which a phase point is treated as genuinely off the
# constraint manifold rather than merely drifted.
OFF_MANIFOLD_TOL = 1e-6


class NotInRangeError(ValueError):
    """Phase point violates the range constraints of the Legendre transform."""


def legendre(j):
    """Map a third-jet point to (t, x, xdot, p_t=0, p_x, p_xdot)."""
    p_x, p_xdot = ostrogradski_momenta(j)
    return PhaseState(t=j.t, x=j.x, xdot=j.xdot, p_x=p_x, p_xdot=p_xdot, p_t=0.0)


def constraint_residuals(ps):
    """(p_t, <p_xdot, xdot>, h); all three vanish on the constraint manifold."""
    v = norm(ps.xdot)
    if v == 0.0:
        raise DomainError("xdot = 0: constraints undefined")
    h = 0.25 * v * v * dot(ps.p_xdot, ps.p_xdot) + dot(ps.p_x, ps.xdot) / v
    return ps.p_t, dot(ps.p_xdot, ps.xdot), h


def legendre_fiber(ps, xddot_par, xdddot_par):
    """A jet in the fiber of the Legendre transform over a constraint point.

    The perpendicular parts are pinned:
        xddot_perp  = |xdot|^3 p_xdot / 2,
        xdddot_perp = (-|xdot|^3 p_x_perp + 3 |xdot| <xdot, xddot_par> p_xdot)/2;
    the parallel parts are the caller's gauge freedom and must be parallel
    to xdot.
    """
    res = constraint_residuals(ps)
    if any(abs(r) > 1e-10 for r in res):
        raise NotInRangeError(f"not in the range of the Legendre transform: {res}")
    xddot_par = vec3(xddot_par)
    xdddot_par = vec3(xdddot_par)
    v = norm(ps.xdot)
    for name, w in (("xddot_par", xddot_par), ("xdddot_par", xdddot_par)):
        if norm(cross(w, ps.xdot)) > 1e-10 * max(1.0, norm(w)) * v:
            raise ValueError(f"{name} must be parallel to xdot")
    xddot_perp = 0.5 * v**3 * ps.p_xdot
    p_x_perp = ps.p_x - (dot(ps.p_x, ps.xdot) / v**2) * ps.xdot
    xdddot_perp = 0.5 * (
        -(v**3) * p_x_perp + 3.0 * v * dot(ps.xdot, xddot_par) * ps.p_xdot
    )
    return JetState(
        ps.t, ps.x, ps.xdot, xddot_perp + xddot_par, xdddot_perp + xdddot_par
    )


def arclength_jet_from_phase(ps):
    """The arclength-gauge fiber point: xddot_par = 0, xdddot_par = -|xddot|^2 xdot."""
    v = norm(ps.xdot)
    xddot_perp = 0.5 * v**3 * ps.p_xdot
    return legendre_fiber(ps, np.zeros(3), -dot(xddot_perp, xddot_perp) * ps.xdot / v**2)


@dataclass
class PhaseDerivative:
    dt: float
    dx: np.ndarray
    dxdot: np.ndarray
    dp_x: np.ndarray
    dp_xdot: np.ndarray


def ham_rhs(ps):
    """Arclength-normalized constrained flow at an on-manifold phase point.

    The flow assumes |xdot| = 1 (preserved exactly, since dxdot is
    proportional to p_xdot, which is transverse to xdot on the manifold).
    """
    res = constraint_residuals(ps)
    if any(abs(r) > OFF_MANIFOLD_TOL for r in res):
        raise NotInRangeError(f"phase point off the constraint manifold: {res}")
    if abs(norm(ps.xdot) - 1.0) > OFF_MANIFOLD_TOL:
        raise NotInRangeError(f"flow needs arclength normalization, |xdot| = {norm(ps.xdot)}")
    return PhaseDerivative(
        dt=1.0,
        dx=ps.xdot.copy(),
        dxdot=0.5 * ps.p_xdot,
        dp_x=np.zeros(3),
        dp_xdot=-ps.p_x + 3.0 * dot(ps.p_x, ps.xdot) * ps.xdot,
    )


def ham_rhs_general(ps):
    """The constraint-function flow field at arbitrary speed (not a default
    integrator path; used to check reparametrization invariance):

    dx = xdot/|xdot|,  dxdot = |xdot|^2 p_xdot / 2,  dp_x = 0,  dt = 0,
    dp_xdot = -p_x/|xdot| + (-<p_xdot,p_xdot>/2 + <p_x,xdot>/|xdot|^3) xdot.

    On the constraint manifold |xdot| is constant along its integral curves
    and x(s) traverses the same curve at unit rate for every speed.
    """
    res = constraint_residuals(ps)
    if any(abs(r) > OFF_MANIFOLD_TOL for r in res):
        raise NotInRangeError(f"phase point off the constraint manifold: {res}")
    v = norm(ps.xdot)
    return PhaseDerivative(
        dt=0.0,
        dx=ps.xdot / v,
        dxdot=0.5 * v * v * ps.p_xdot,
        dp_x=np.zeros(3),
        dp_xdot=-ps.p_x / v
        + (-0.5 * dot(ps.p_xdot, ps.p_xdot) + dot(ps.p_x, ps.xdot) / v**3) * ps.xdot,
    )


def diff_momentum(ps, tau, tau_dot):
    """Reparametrization momentum tau p_t - tau_dot <p_xdot, xdot>.

    Identically zero on the constraint manifold, for every generator.
    """
    return tau * ps.p_t - tau_dot * dot(ps.p_xdot, ps.xdot)


def spherical_radial_momentum(ps):
    """Radial momentum <p_xdot, xdot>/|xdot| of the spherical chart on xdot."""
    v = norm(ps.xdot)
    if v == 0.0:
        raise DomainError("xdot = 0: spherical chart undefined")
    return dot(ps.p_xdot, ps.xdot) / v


def angular_momentum(ps):
    """l = x cross p_x + xdot cross p_xdot, conserved by the flow."""
    return cross(ps.x, ps.p_x) + cross(ps.xdot, ps.p_xdot)


def separable_invariant(ps):
    """Constant of the <p_x, xdot> subsystem along the flow:

    <p_x,p_xdot>^2/4 + |p_x|^2 <p_x,xdot> - <p_x,xdot>^3.
    """
    u = dot(ps.p_x, ps.xdot)
    v = dot(ps.p_x, ps.p_xdot)
    return 0.25 * v * v + dot(ps.p_x, ps.p_x) * u - u**3


def project_constraints(y):
    """Pull a flat phase vector back onto the constraint manifold.

    Renormalizes xdot, removes the tangential part of p_xdot, and shifts the
    tangential part of p_x so that h = 0.
    """
    x, xdot, p_x, p_xdot = y[0:3], y[3:6], y[6:9], y[9:12]
    xdot = xdot / np.linalg.norm(xdot)
    p_xdot = p_xdot - np.dot(p_xdot, xdot) * xdot
    p_x_perp = p_x - np.dot(p_x, xdot) * xdot
    p_x = p_x_perp - 0.25 * np.dot(p_xdot, p_xdot) * xdot
    return np.concatenate([x, xdot, p_x, p_xdot])


def _flat_rhs(t, y):
    xdot = y[3:6]
    p_x = y[6:9]
    p_xdot = y[9:12]
    return np.concatenate(
        [xdot, 0.5 * p_xdot, np.zeros(3), -p_x + 3.0 * np.dot(p_x, xdot) * xdot]
    )


def integrate_flow(ps0, step, count, method="rk4", project=False):
    """Integrate the constrained flow from an on-manifold phase point.

    With project=True the constraints are re-imposed after every step;
    the default measures true drift.  Returns a CurveTrace of PhaseState.
    """
    res = constraint_residuals(ps0)
    if any(abs(r) > OFF_MANIFOLD_TOL for r in res):
        raise NotInRangeError(f"initial point off the constraint manifold: {res}")
    if abs(norm(ps0.xdot) - 1.0) > OFF_MANIFOLD_TOL:
        raise NotInRangeError("flow needs arclength normalization of the initial point")
    stepper = ode.integrate if method == "rk4" else ode.integrate_rk45
    if project:
        y = ps0.to_array()
        ys = [y]
        for i in range(count):
            _, pair = stepper(_flat_rhs, y, step, 1, t0=ps0.t + i * step)
            y = project_constraints(pair[1])
            ys.append(y)
        ys = np.array(ys)
        ts = ps0.t + step * np.arange(count + 1)
    else:
        ts, ys = stepper(_flat_rhs, ps0.to_array(), step, count, t0=ps0.t)
    samples = [PhaseState.from_array(t, y) for t, y in zip(ts, ys)]
    return CurveTrace(
        step=step,
        samples=samples,
        metadata={
            "gauge": "arclength",
            "integrator": method,
            "projected": bool(project),
        },
    )
