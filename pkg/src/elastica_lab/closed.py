"""Length-constrained elastica: the reduced first-order problem with
multiplier lambda, its frame-form Euler-Lagrange equation, and the relation
tying the integration constants to the free-elastica momenta.

Integrating the second-order equations once (the density has no explicit x
dependence) leaves a first-order problem in q = xdot with Lagrangian

    l(q, qdot) = |q x qdot|^2/|q|^5 + lambda |q| - <c, q>,

whose Euler-Lagrange equation in the Frenet frame (arclength, v = 1) reads

    (lambda - kappa^2) T - 2 kappa_dot N - 2 kappa tau B = c.

Its squared norm, with the conserved j = -4 kappa^2 tau, is the quadrature
relation

    4 kappa'^2 + (lambda - kappa^2)^2 + j^2/(4 kappa^2) = |c|^2,

which at lambda = 0 identifies |c| with |p| and j with <l, p>.
"""

import numpy as np

from .frenet import KAPPA_MIN
from .geometry import dot, norm, vec3
from .lagrangian import DomainError
from .scalar import SingularTorsionError


def reduced_lagrangian(q, qdot, lam, c):
    """|q x qdot|^2/|q|^5 + lambda |q| - <c, q>."""
    q = vec3(q)
    qdot = vec3(qdot)
    c = vec3(c)
    nq = norm(q)
    if nq == 0.0:
        raise DomainError("q = 0: reduced Lagrangian undefined")
    w = np.cross(q, qdot)
    return dot(w, w) / nq**5 + lam * nq - dot(c, q)


def closed_el_residual(f, kappa_dot, lam, c):
    """(lambda - kappa^2) T - 2 kappa_dot N - 2 kappa tau B - c.

    Zero along constrained solutions; at lambda = 0 the constant c is the
    free-elastica linear momentum p.
    """
    c = vec3(c)
    return (
        (lam - f.kappa**2) * f.T
        - 2.0 * kappa_dot * f.N
        - 2.0 * f.kappa * f.tau * f.B
        - c
    )


def foltinek_invariant(kappa, kappa_prime, tau, lam, c_norm, j):
    """Residual of 4 kappa'^2 + (lambda - kappa^2)^2 + j^2/(4 kappa^2) = c^2."""
    if abs(kappa) <= KAPPA_MIN:
        raise SingularTorsionError(f"kappa = {kappa}: invariant singular")
    return (
        4.0 * kappa_prime**2
        + (lam - kappa**2) ** 2
        + j**2 / (4.0 * kappa**2)
        - c_norm**2
    )


def angular_momentum_j(kappa, tau):
    """Conserved angular momentum of the reduced problem: j = -4 kappa^2 tau."""
    return -4.0 * kappa**2 * tau


def constrained_scalar_rhs(kappa, kappa_dot, lam, j):
    """Curvature dynamics under the length constraint:

    2 kappa_ddot + kappa^3 - 2 kappa tau^2 = lambda kappa,  tau = -j/(4 kappa^2),

    returned in first-order form (kappa_dot, kappa_ddot).
    """
    if j == 0.0:
        return kappa_dot, 0.5 * lam * kappa - 0.5 * kappa**3
    if abs(kappa) <= KAPPA_MIN:
        raise SingularTorsionError(f"kappa = {kappa} with j = {j}: rhs singular")
    return (
        kappa_dot,
        0.5 * lam * kappa - 0.5 * kappa**3 + j**2 / (16.0 * kappa**3),
    )
