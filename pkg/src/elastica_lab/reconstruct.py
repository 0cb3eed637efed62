"""Rebuild the space curve from curvature samples and the conserved momenta.

The motion splits along the constant momentum p and the plane perpendicular
to it.  Along p the velocity is <xdot, p> = -kappa^2; perpendicular to p the
unit vectors D = (xdot x p)/|xdot x p| and E = ((xdot x p) x p)/|...| rotate
rigidly at the rate

    Omega = <l, p> |p| / (2 (|p|^2 - kappa^4)),

so with phi = integral of Omega,

    D(s) =  cos(phi) D0 - sin(phi) E0,
    E(s) =  sin(phi) D0 + cos(phi) E0,

and  xdot(s) = -kappa^2 p / |p|^2 - (sqrt(|p|^2 - kappa^4)/|p|) E(s).

(The rotation rate carries a factor 1/2 and the orientation above; both are
fixed against direct integration of the fourth-order dynamics, which the
test suite enforces.)  Planar motion (tau = 0) has a constant binormal and a
closed form; degenerate momenta give straight lines.
"""

import enum

import numpy as np

from .frenet import KAPPA_MIN
from .geometry import CurveTrace, JetState, cross, dot, norm, vec3
from .lagrangian import conserved_momenta
from .ode import cumulative_simpson
from .scalar import constants_from_momenta, integrate_scalar

# Relative floor for |p|^2 - kappa^4; below it xdot is numerically parallel
# to p and the generic branch is invalid.
DENOMINATOR_FLOOR = 1e-10


class Branch(enum.Enum):
    GENERIC = "generic"
    PLANAR = "planar"
    DEGENERATE_LINE = "degenerate_line"


class BranchError(ValueError):
    """The requested reconstruction branch does not apply to this data."""


def classify_case(cs, kappa0, tau0):
    """Pick the reconstruction branch for the given invariants.

    GENERIC needs kappa != 0 and tau != 0; PLANAR needs kappa != 0, tau = 0
    and p not parallel to B (automatic for p != 0); everything else is a line.
    """
    if abs(kappa0) <= KAPPA_MIN or norm(cs.p) == 0.0:
        return Branch.DEGENERATE_LINE
    if abs(tau0) > 1e-12:
        return Branch.GENERIC
    return Branch.PLANAR


def frame_DE(j, p):
    """Unit vectors along xdot x p and (xdot x p) x p.

    Both are orthogonal to p; they fail to exist when xdot is parallel to p
    (equivalently |p|^2 = kappa^4 on solutions), which raises BranchError.
    """
    p = vec3(p)
    p2 = dot(p, p)
    u = cross(j.xdot, p)
    u2 = dot(u, u)
    if u2 <= DENOMINATOR_FLOOR * p2:
        raise BranchError("xdot parallel to p: no rotating frame, use the planar/line branch")
    D = u / np.sqrt(u2)
    v = cross(u, p)
    E = v / norm(v)
    return D, E


def phase_phi(kappa_samples, cs, step):
    """Accumulated rotation angle phi(s) of the (D, E) frame on the grid."""
    kappa = np.asarray(kappa_samples, dtype=float)
    p2 = dot(cs.p, cs.p)
    lp = dot(cs.l, cs.p)
    denom = p2 - kappa**4
    if np.any(denom <= DENOMINATOR_FLOOR * p2):
        raise BranchError("|p|^2 - kappa^4 hit the floor: generic branch invalid")
    rate = lp * np.sqrt(p2) / (2.0 * denom)
    return cumulative_simpson(rate, step)


def reconstruct_curve(kappa_samples, kappa_dot_samples, cs, x0, D0, E0, step, t0=0.0):
    """Generic-branch reconstruction from kappa(s) and the conserved set.

    Positions come from quadrature of
        xdot(s) = -kappa^2 p/|p|^2 - (sqrt(|p|^2-kappa^4)/|p|) E(s);
    the higher jet slots are recovered by expanding the Frenet frame over the
    orthonormal triple (p/|p|, D, E).  Returns a CurveTrace of JetState.
    """
    kappa = np.asarray(kappa_samples, dtype=float)
    kappa_dot = np.asarray(kappa_dot_samples, dtype=float)
    x0 = vec3(x0)
    D0 = vec3(D0)
    E0 = vec3(E0)
    p = cs.p
    p2 = dot(p, p)
    if p2 == 0.0:
        raise BranchError("p = 0: degenerate branch")
    pn = np.sqrt(p2)
    phat = p / pn

    phi = phase_phi(kappa, cs, step)
    D = np.outer(np.cos(phi), D0) - np.outer(np.sin(phi), E0)
    E = np.outer(np.sin(phi), D0) + np.outer(np.cos(phi), E0)

    w = np.sqrt(p2 - kappa**4)
    tau = dot(cs.l, p) / (-4.0) / kappa**2
    xdot = -np.outer(kappa**2 / p2, p) - (w / pn)[:, None] * E
    x = x0 + cumulative_simpson(xdot, step)

    # Frame recovery over (phat, D, E): components follow from the moving-frame
    # expressions of p, D and E.
    N = (
        np.outer(-2.0 * kappa_dot / pn, phat)
        + (2.0 * kappa * tau / w)[:, None] * D
        + (2.0 * kappa**2 * kappa_dot / (w * pn))[:, None] * E
    )
    B = (
        np.outer(-2.0 * kappa * tau / pn, phat)
        + (-2.0 * kappa_dot / w)[:, None] * D
        + (2.0 * kappa**3 * tau / (w * pn))[:, None] * E
    )
    xddot = kappa[:, None] * N
    xdddot = kappa_dot[:, None] * N - (kappa**2)[:, None] * xdot + (kappa * tau)[:, None] * B

    samples = [
        JetState(t0 + i * step, x[i], xdot[i], xddot[i], xdddot[i])
        for i in range(len(kappa))
    ]
    return CurveTrace(
        step=step, samples=samples, metadata={"gauge": "arclength", "integrator": "reconstruct"}
    )


def reconstruct_planar(kappa_samples, kappa_dot_samples, cs, x0, B, step, t0=0.0):
    """Planar-branch reconstruction with constant binormal B.

    Uses <x, p> = <x0, p> - integral(kappa^2) and
    <x, p x B> = <x0, p x B> + 2 kappa(s0) - 2 kappa(s); kappa may be signed
    (planar curvature changes sign at inflections).
    """
    kappa = np.asarray(kappa_samples, dtype=float)
    kappa_dot = np.asarray(kappa_dot_samples, dtype=float)
    x0 = vec3(x0)
    B = vec3(B)
    p = cs.p
    pxB = cross(p, B)
    q2 = dot(pxB, pxB)
    if q2 == 0.0:
        raise BranchError("p x B = 0: the motion is a straight line")
    p2 = dot(p, p)

    ksq_int = cumulative_simpson(kappa**2, step)
    x = (
        x0
        - np.outer(ksq_int / p2, p)
        + np.outer((2.0 * kappa[0] - 2.0 * kappa) / q2, pxB)
    )
    # T and N in the constant basis (p, p x B):  p = -kappa^2 T - 2 kappa_dot N
    # and p x B = -2 kappa_dot T + kappa^2 N.
    T = np.outer(-(kappa**2) / p2, p) + np.outer(-2.0 * kappa_dot / q2, pxB)
    N = np.outer(-2.0 * kappa_dot / p2, p) + np.outer(kappa**2 / q2, pxB)
    xddot = kappa[:, None] * N
    xdddot = kappa_dot[:, None] * N - (kappa**2)[:, None] * T

    samples = [
        JetState(t0 + i * step, x[i], T[i], xddot[i], xdddot[i])
        for i in range(len(kappa))
    ]
    return CurveTrace(
        step=step, samples=samples, metadata={"gauge": "arclength", "integrator": "reconstruct_planar"}
    )


def reconstruct_line(x0, tangent, step, count, t0=0.0):
    """Degenerate branch: straight line with unit tangent."""
    x0 = vec3(x0)
    t_hat = vec3(tangent)
    n = norm(t_hat)
    if n == 0.0:
        raise BranchError("line needs a nonzero tangent")
    t_hat = t_hat / n
    zero = np.zeros(3)
    samples = [
        JetState(t0 + i * step, x0 + i * step * t_hat, t_hat, zero, zero)
        for i in range(count + 1)
    ]
    return CurveTrace(
        step=step, samples=samples, metadata={"gauge": "arclength", "integrator": "reconstruct_line"}
    )


def reduce_and_reconstruct(j0, step, count):
    """Full scalar-reduction pipeline from an arclength initial jet.

    Extracts the conserved set, integrates the curvature equation with the
    matching torsion constant, and rebuilds x(s) on the branch the invariants
    select.  The result is grid-compatible with direct integration of the
    fourth-order dynamics from the same jet.
    """
    cs = conserved_momenta(j0)
    kappa0 = norm(j0.xddot)
    branch = classify_case(
        cs, kappa0, 0.0 if kappa0 <= KAPPA_MIN else cs.c / kappa0**2
    )
    if branch is Branch.DEGENERATE_LINE:
        return reconstruct_line(j0.x, j0.xdot, step, count, t0=j0.t), branch

    kappa_dot0 = dot(j0.xddot, j0.xdddot) / kappa0
    c, _ = constants_from_momenta(cs)
    if branch is Branch.PLANAR:
        c = 0.0
    _, kappa, kappa_dot = integrate_scalar(kappa0, kappa_dot0, c, step, count)

    if branch is Branch.GENERIC:
        D0, E0 = frame_DE(j0, cs.p)
        trace = reconstruct_curve(
            kappa, kappa_dot, cs, j0.x, D0, E0, step, t0=j0.t
        )
    else:
        B = cross(j0.xdot, j0.xddot) / kappa0
        trace = reconstruct_planar(kappa, kappa_dot, cs, j0.x, B, step, t0=j0.t)
    return trace, branch
