"""Value types for jets, phase points, moving frames and conserved quantities.

Everything is a plain value over numpy length-3 float arrays; nothing here
mutates shared state.  Constructors reject NaN/Inf outright because every
downstream formula divides by a norm.
"""

from dataclasses import dataclass, field

import numpy as np

# Absolute tolerance for representation-level invariants (orthonormality,
# arclength conditions at construction).  Trajectory drift uses its own,
# looser tolerances declared where each run is checked.
INVARIANT_TOL = 1e-10


class DegenerateInputError(ValueError):
    """A geometric input (direction, speed) is zero where it must not be."""


def vec3(v):
    """Validate and return a finite length-3 float64 vector."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite 3-vector: {a}")
    return a.copy()


def dot(u, v):
    return float(np.dot(u, v))


def cross(u, v):
    return np.cross(u, v)


def norm(v):
    return float(np.linalg.norm(v))


def split_parallel(v, direction):
    """Split v into components parallel and perpendicular to direction.

    Returns (parallel, perpendicular) with parallel + perpendicular == v.
    """
    v = vec3(v)
    d = vec3(direction)
    d2 = dot(d, d)
    if d2 == 0.0:
        raise DegenerateInputError("cannot split along a zero direction")
    parallel = (dot(v, d) / d2) * d
    return parallel, v - parallel


@dataclass
class JetState:
    """A third-jet point: parameter t with x and its first three derivatives."""

    t: float
    x: np.ndarray
    xdot: np.ndarray
    xddot: np.ndarray
    xdddot: np.ndarray

    def __post_init__(self):
        self.t = float(self.t)
        if not np.isfinite(self.t):
            raise ValueError("non-finite jet parameter")
        self.x = vec3(self.x)
        self.xdot = vec3(self.xdot)
        self.xddot = vec3(self.xddot)
        self.xdddot = vec3(self.xdddot)

    def arclength_defects(self):
        """Residuals of the three arclength submanifold conditions.

        (|xdot|^2 - 1, <xdot, xddot>, <xdot, xdddot> + |xddot|^2)
        """
        return (
            dot(self.xdot, self.xdot) - 1.0,
            dot(self.xdot, self.xddot),
            dot(self.xdot, self.xdddot) + dot(self.xddot, self.xddot),
        )

    def is_arclength(self, tol=INVARIANT_TOL):
        return all(abs(d) <= tol for d in self.arclength_defects())

    def to_array(self):
        """Flat 12-vector (x, xdot, xddot, xdddot), for integrators."""
        return np.concatenate([self.x, self.xdot, self.xddot, self.xdddot])

    @staticmethod
    def from_array(t, y):
        y = np.asarray(y, dtype=float)
        return JetState(t, y[0:3], y[3:6], y[6:9], y[9:12])


@dataclass
class PhaseState:
    """A cotangent point over the first jet: (t, x, xdot, p_t, p_x, p_xdot)."""

    t: float
    x: np.ndarray
    xdot: np.ndarray
    p_x: np.ndarray
    p_xdot: np.ndarray
    p_t: float = 0.0

    def __post_init__(self):
        self.t = float(self.t)
        self.p_t = float(self.p_t)
        if not (np.isfinite(self.t) and np.isfinite(self.p_t)):
            raise ValueError("non-finite phase scalar")
        self.x = vec3(self.x)
        self.xdot = vec3(self.xdot)
        self.p_x = vec3(self.p_x)
        self.p_xdot = vec3(self.p_xdot)
        if norm(self.xdot) == 0.0:
            raise DegenerateInputError("phase state requires xdot != 0")

    def to_array(self):
        """Flat 12-vector (x, xdot, p_x, p_xdot); p_t rides along as exactly 0."""
        return np.concatenate([self.x, self.xdot, self.p_x, self.p_xdot])

    @staticmethod
    def from_array(t, y, p_t=0.0):
        y = np.asarray(y, dtype=float)
        return PhaseState(t, y[0:3], y[3:6], y[6:9], y[9:12], p_t)


@dataclass
class FrenetFrame:
    """Orthonormal (T, N, B) with curvature kappa >= 0 and torsion tau."""

    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float

    def __post_init__(self):
        self.T = vec3(self.T)
        self.N = vec3(self.N)
        self.B = vec3(self.B)
        self.kappa = float(self.kappa)
        self.tau = float(self.tau)
        if not (np.isfinite(self.kappa) and np.isfinite(self.tau)):
            raise ValueError("non-finite curvature or torsion")
        if self.kappa < 0.0:
            raise ValueError("curvature must be >= 0")
        for name, v in (("T", self.T), ("N", self.N), ("B", self.B)):
            if abs(norm(v) - 1.0) > INVARIANT_TOL:
                raise ValueError(f"{name} is not a unit vector")
        if (
            abs(dot(self.T, self.N)) > INVARIANT_TOL
            or abs(dot(self.N, self.B)) > INVARIANT_TOL
            or abs(dot(self.T, self.B)) > INVARIANT_TOL
        ):
            raise ValueError("frame vectors are not pairwise orthogonal")
        if norm(self.B - cross(self.T, self.N)) > INVARIANT_TOL:
            raise ValueError("B != T x N")


STANDARD_FRAME = (
    np.array([1.0, 0.0, 0.0]),
    np.array([0.0, 1.0, 0.0]),
    np.array([0.0, 0.0, 1.0]),
)


@dataclass
class ConservedSet:
    """Linear momentum p, angular momentum l, energy H, torsion constant c."""

    p: np.ndarray
    l: np.ndarray
    H: float
    c: float

    def __post_init__(self):
        self.p = vec3(self.p)
        self.l = vec3(self.l)
        self.H = float(self.H)
        self.c = float(self.c)
        if not (np.isfinite(self.H) and np.isfinite(self.c)):
            raise ValueError("non-finite conserved scalar")


@dataclass
class CurveTrace:
    """Uniformly sampled trajectory: a list of JetState or PhaseState.

    The parameter of consecutive samples must increase by exactly `step`
    (within 1e-12).  `metadata` carries gauge/integrator tags.
    """

    step: float
    samples: list
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.step = float(self.step)
        if self.step <= 0.0:
            raise ValueError("step must be positive")
        if not self.samples:
            raise ValueError("trace needs at least one sample")
        params = np.array([s.t for s in self.samples])
        if len(params) > 1:
            gaps = np.diff(params)
            if np.any(np.abs(gaps - self.step) > 1e-12):
                raise ValueError("samples are not uniformly spaced by step")

    def __len__(self):
        return len(self.samples)

    def params(self):
        return np.array([s.t for s in self.samples])

    def stacked(self, attr):
        """(N, 3) array of one vector field across all samples."""
        return np.stack([getattr(s, attr) for s in self.samples])

    def positions(self):
        return self.stacked("x")
