"""Reduced scalar dynamics of curvature and torsion, and their first integrals.

With c = kappa^2 tau (constant along solutions), curvature obeys

    kappa_ddot = -kappa^3/2 + c^2/kappa^3,

and  kappa_dot^2 + kappa^4/4 + c^2/kappa^2  is conserved.  For c = 0 the
planar branch integrates the signed-curvature equation straight through
kappa = 0; for c != 0 the first integral forbids kappa -> 0, so reaching
the curvature floor signals integrator failure.
"""

import numpy as np

from . import ode
from .frenet import KAPPA_MIN


class SingularTorsionError(ValueError):
    """kappa at or below the floor with nonzero torsion constant c."""


def torsion_from_c(kappa, c):
    """tau = c / kappa^2 (0 when c = 0, even at kappa = 0)."""
    if c == 0.0:
        return 0.0
    if abs(kappa) <= KAPPA_MIN:
        raise SingularTorsionError(f"kappa = {kappa} with c = {c}: torsion singular")
    return c / kappa**2


def scalar_rhs(kappa, kappa_dot, c):
    """First-order form of the curvature equation: returns (kappa_dot, kappa_ddot)."""
    if c == 0.0:
        return kappa_dot, -0.5 * kappa**3
    if abs(kappa) <= KAPPA_MIN:
        raise SingularTorsionError(f"kappa = {kappa} with c = {c}: rhs singular")
    return kappa_dot, -0.5 * kappa**3 + c**2 / kappa**3


def first_integral(kappa, kappa_dot, c):
    """kappa_dot^2 + kappa^4/4 + c^2/kappa^2, constant along solutions."""
    if c == 0.0:
        return kappa_dot**2 + 0.25 * kappa**4
    if abs(kappa) <= KAPPA_MIN:
        raise SingularTorsionError(f"kappa = {kappa} with c = {c}: integral singular")
    return kappa_dot**2 + 0.25 * kappa**4 + c**2 / kappa**2


def constants_from_momenta(cs):
    """(c, energy_level) from the momenta: c = -<l,p>/4, level = |p|^2/4."""
    return -0.25 * float(np.dot(cs.l, cs.p)), 0.25 * float(np.dot(cs.p, cs.p))


def integrate_scalar(kappa0, kappa_dot0, c, step, count):
    """RK4 on (kappa, kappa_dot); returns (s, kappa, kappa_dot) arrays."""

    def rhs(t, y):
        kd, kdd = scalar_rhs(y[0], y[1], c)
        return np.array([kd, kdd])

    ts, ys = ode.integrate(rhs, np.array([kappa0, kappa_dot0]), step, count)
    return ts, ys[:, 0], ys[:, 1]
