"""Spatial polygons, quaternions, and Hermitian frame coordinates.

A spatial n-gon stores its edge vectors as rows of an (n, 3) array, closed
and normalized to perimeter 2. Identifying R^3 with the pure imaginary
quaternions, each edge is the image of a quaternion q under q -> conj(q)*i*q.
Writing q = x + y*j for complex x, y, a full edge list comes from a
Hermitian-orthonormal pair of complex n-vectors:

    e_i = |x|^2 - |y|^2,   e_j = -2*Im(conj(x)*y),   e_k = 2*Re(conj(x)*y)

entrywise. The scalar quaternion arithmetic below is the reference for that
vectorized form and is tested against it.

Left multiplication of every q_l by a unit complex number exp(i*theta_l)
(the framing circle) changes the frame but not the polygon; each product
conj(x_l)*y_l is invariant term by term, so orthonormality is preserved to
rounding, not merely to tolerance.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import FrameInvalid, NotClosed, NotNormalized, SectionSingular, ZeroEdge

CLOSURE_RTOL = 1e-10
PERIMETER_TOL = 1e-10
FRAME_TOL = 1e-10
SECTION_TOL = 1e-8


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Quaternion:
    """Quaternion w + x*i + y*j + z*k with float components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_vector(cls, v) -> "Quaternion":
        v = np.asarray(v, dtype=np.float64)
        return cls(0.0, float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_complex_pair(cls, a: complex, b: complex) -> "Quaternion":
        """q = a + b*j under the identification i*j = k."""
        a = complex(a)
        b = complex(b)
        return cls(a.real, a.imag, b.real, b.imag)

    def to_complex_pair(self) -> tuple[complex, complex]:
        return complex(self.w, self.x), complex(self.y, self.z)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.hypot(math.hypot(self.w, self.x), math.hypot(self.y, self.z))

    def is_pure(self, tol: float = 1e-12) -> bool:
        return abs(self.w) <= tol * max(1.0, self.norm())

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented


QUAT_I = Quaternion(0.0, 1.0, 0.0, 0.0)


def hopf_map(q: Quaternion) -> Quaternion:
    """conj(q) * i * q: pure imaginary, with |result| = |q|^2.

    Constant on circles exp(i*theta) * q."""
    return q.conjugate() * QUAT_I * q


def hopf_section(e: Quaternion) -> Quaternion:
    """A preferred square root of the Hopf map.

    For pure imaginary e != 0 with direction u, returns
    q = sqrt(|e|) * (i + u) / |i + u|, which satisfies hopf_map(q) = e.
    Raises ZeroEdge for e = 0 and SectionSingular when u is within 1e-8
    of -i, where no continuous choice exists.
    """
    r = e.norm()
    if r == 0.0:
        raise ZeroEdge("the section is undefined at the zero quaternion")
    if not e.is_pure(1e-9):
        raise ValueError("hopf_section expects a pure imaginary quaternion")
    s = Quaternion(0.0, 1.0 + e.x / r, e.y / r, e.z / r)
    m = s.norm()
    if m <= SECTION_TOL:
        raise SectionSingular("edge direction at the -i singular point")
    return s * (math.sqrt(r) / m)


@dataclass(frozen=True, eq=False, repr=False)
class SpacePolygon:
    """Closed spatial polygon of perimeter 2; edges are rows of an (n, 3) array."""

    edges: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.float64)
        if e.ndim != 2 or e.shape[1] != 3 or e.shape[0] < 3:
            raise ValueError("edges must be an (n, 3) array with n >= 3")
        if not np.all(np.isfinite(e)):
            raise ValueError("edges must be finite")
        lens = np.linalg.norm(e, axis=1)
        perimeter = math.fsum(lens)
        if abs(perimeter - 2.0) > PERIMETER_TOL:
            raise NotNormalized(f"perimeter {perimeter!r} is not 2")
        defect = math.hypot(
            math.fsum(e[:, 0]), math.hypot(math.fsum(e[:, 1]), math.fsum(e[:, 2]))
        )
        if defect > CLOSURE_RTOL * perimeter:
            raise NotClosed("edges do not sum to zero")
        object.__setattr__(self, "edges", _frozen(e, np.float64))

    @classmethod
    def normalized(cls, edges) -> "SpacePolygon":
        e = np.asarray(edges, dtype=np.float64)
        perimeter = math.fsum(np.linalg.norm(np.atleast_2d(e), axis=1))
        if not perimeter > 0.0:
            raise NotNormalized("cannot normalize a zero-perimeter polygon")
        return cls(e * (2.0 / perimeter))

    @property
    def n(self) -> int:
        return self.edges.shape[0]

    @property
    def perimeter(self) -> float:
        return math.fsum(np.linalg.norm(self.edges, axis=1))

    def vertices(self, base=(0.0, 0.0, 0.0)) -> np.ndarray:
        base = np.asarray(base, dtype=np.float64)
        return np.vstack([base, base + np.cumsum(self.edges, axis=0)])

    def __repr__(self):
        return f"SpacePolygon(n={self.n})"


@dataclass(frozen=True, eq=False, repr=False)
class HermitianFrame:
    """Hermitian-orthonormal pair (x, y) of complex n-vectors, n >= 3."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=np.complex128))
        y = np.atleast_1d(np.asarray(self.y, dtype=np.complex128))
        if x.ndim != 1 or x.shape != y.shape or x.size < 3:
            raise ValueError("x and y must be equal-length vectors, n >= 3")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("frame entries must be finite")
        defect = max(
            abs(np.linalg.norm(x) - 1.0),
            abs(np.linalg.norm(y) - 1.0),
            abs(complex(np.vdot(x, y))),
        )
        if defect > FRAME_TOL:
            raise FrameInvalid(f"orthonormality defect {defect:.3e}")
        object.__setattr__(self, "x", _frozen(x, np.complex128))
        object.__setattr__(self, "y", _frozen(y, np.complex128))

    @property
    def n(self) -> int:
        return self.x.size

    def __repr__(self):
        return f"HermitianFrame(n={self.n})"


def frame_to_space_polygon(f: HermitianFrame) -> SpacePolygon:
    """Entrywise Hopf image of q_l = x_l + y_l * j.

    Edge lengths are |x_l|^2 + |y_l|^2, so the perimeter is exactly the
    frame's total squared norm, 2."""
    cxy = np.conj(f.x) * f.y
    edges = np.column_stack(
        [np.abs(f.x) ** 2 - np.abs(f.y) ** 2, -2.0 * cxy.imag, 2.0 * cxy.real]
    )
    return SpacePolygon(edges)


def space_polygon_to_frame(p: SpacePolygon, theta=None) -> HermitianFrame:
    """Lift each edge through the section, then turn the framing circle.

    theta is a length-n array of framing angles (default all zero); entry l
    multiplies q_l on the left by exp(i*theta_l). Raises ZeroEdge on zero
    edges and SectionSingular when an edge points within 1e-8 of -i; rotate
    the polygon first (rotate_polygon) to move edges off that direction.
    """
    e = p.edges
    r = np.linalg.norm(e, axis=1)
    if np.any(r == 0.0):
        raise ZeroEdge("the section is undefined on zero edges")
    u = e / r[:, None]
    m = np.sqrt((1.0 + u[:, 0]) ** 2 + u[:, 1] ** 2 + u[:, 2] ** 2)
    if np.any(m <= SECTION_TOL):
        raise SectionSingular("an edge points at the -i singular direction")
    scale = np.sqrt(r) / m
    x = 1j * scale * (1.0 + u[:, 0])
    y = scale * (u[:, 1] + 1j * u[:, 2])
    if theta is not None:
        phase = np.exp(1j * np.asarray(theta, dtype=np.float64))
        if phase.shape != (p.n,):
            raise ValueError("theta must provide one angle per edge")
        x = x * phase
        y = y * phase
    return HermitianFrame(x, y)


def apply_framing(f: HermitianFrame, theta) -> HermitianFrame:
    """Turn the framing circle: (x_l, y_l) -> exp(i*theta_l) * (x_l, y_l).

    The projected polygon is unchanged; this re-checks that (to 1e-12) and
    the frame invariants, reporting FrameInvalid on any drift.
    """
    phase = np.exp(1j * np.asarray(theta, dtype=np.float64))
    if phase.shape != (f.n,):
        raise ValueError("theta must provide one angle per edge")
    try:
        out = HermitianFrame(f.x * phase, f.y * phase)
    except FrameInvalid:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise FrameInvalid(str(exc)) from exc
    drift = np.max(
        np.abs(frame_to_space_polygon(out).edges - frame_to_space_polygon(f).edges)
    )
    if drift > 1e-12:
        raise FrameInvalid(f"framing moved the polygon by {drift:.3e}")
    return out


def twisted_framing(n: int, m: int) -> np.ndarray:
    """Framing angles theta_l = 2*pi*m*l/n, l = 0..n-1: m full twists."""
    return 2.0 * np.pi * m * np.arange(n) / n


def rotate_polygon(p: SpacePolygon, rot) -> SpacePolygon:
    """Apply a 3x3 rotation matrix to every edge.

    The standard way to clear SectionSingular: compose with a random
    rotation (sampling.random_rotation_matrix) until no edge direction is
    near -i, lift, then rotate the result back.
    """
    rot = np.asarray(rot, dtype=np.float64)
    if rot.shape != (3, 3):
        raise ValueError("rot must be a 3x3 matrix")
    if np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-10:
        raise ValueError("rot must be orthogonal")
    return SpacePolygon(p.edges @ rot.T)
