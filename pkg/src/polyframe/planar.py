"""Planar polygons and their orthonormal frame coordinates.

A planar n-gon is stored by its edge vectors as complex numbers. The polygon
is closed (edges sum to zero) and normalized to perimeter 2. Squaring the
entries of z = x + i*y for an orthonormal pair (x, y) in R^n produces exactly
such an edge list, and every such polygon arises this way; polygon_to_frame
inverts the squaring with a principal-branch square root and a sign choice
per edge.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, FrameInvalid, NotClosed, NotNormalized, OnBoundary, ZeroEdge

CLOSURE_RTOL = 1e-10
PERIMETER_TOL = 1e-10
FRAME_TOL = 1e-10
ZERO_EDGE_TOL = 1e-14
ANGLE_TOL = 1e-9


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


def _closure_defect(edges) -> complex:
    # compensated sums; np.sum's pairwise error is already small but this
    # keeps the validation independent of summation order
    return complex(math.fsum(edges.real), math.fsum(edges.imag))


@dataclass(frozen=True, eq=False, repr=False)
class PlanarPolygon:
    """Closed planar polygon of perimeter 2, stored as complex edge vectors."""

    edges: np.ndarray

    def __post_init__(self):
        e = np.atleast_1d(np.asarray(self.edges, dtype=np.complex128))
        if e.ndim != 1 or e.size < 3:
            raise ValueError("a polygon needs a 1-D list of at least 3 edges")
        if not np.all(np.isfinite(e)):
            raise ValueError("edges must be finite")
        perimeter = math.fsum(np.abs(e))
        if abs(perimeter - 2.0) > PERIMETER_TOL:
            raise NotNormalized(f"perimeter {perimeter!r} is not 2")
        if abs(_closure_defect(e)) > CLOSURE_RTOL * perimeter:
            raise NotClosed("edges do not sum to zero")
        object.__setattr__(self, "edges", _frozen(e, np.complex128))

    @classmethod
    def normalized(cls, edges) -> "PlanarPolygon":
        """Construct after rescaling the edges to perimeter 2."""
        e = np.atleast_1d(np.asarray(edges, dtype=np.complex128))
        perimeter = math.fsum(np.abs(e))
        if not perimeter > 0.0:
            raise NotNormalized("cannot normalize a zero-perimeter polygon")
        return cls(e * (2.0 / perimeter))

    @property
    def n(self) -> int:
        return self.edges.size

    @property
    def perimeter(self) -> float:
        return math.fsum(np.abs(self.edges))

    def vertices(self, base: complex = 0j) -> np.ndarray:
        """n+1 vertices starting at base; the last returns to base up to
        the closure tolerance."""
        return np.concatenate([[base], base + np.cumsum(self.edges)])

    def __repr__(self):
        return f"PlanarPolygon(n={self.n})"


@dataclass(frozen=True, eq=False, repr=False)
class StiefelFrame:
    """Ordered orthonormal pair (x, y) of real n-vectors, n >= 3."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x))
        y = np.atleast_1d(np.asarray(self.y))
        if np.iscomplexobj(x) or np.iscomplexobj(y):
            raise TypeError("StiefelFrame is real; use HermitianFrame for complex pairs")
        x = x.astype(np.float64)
        y = y.astype(np.float64)
        if x.ndim != 1 or x.shape != y.shape or x.size < 3:
            raise ValueError("x and y must be equal-length vectors, n >= 3")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("frame entries must be finite")
        defect = max(
            abs(np.linalg.norm(x) - 1.0),
            abs(np.linalg.norm(y) - 1.0),
            abs(float(x @ y)),
        )
        if defect > FRAME_TOL:
            raise FrameInvalid(f"orthonormality defect {defect:.3e}")
        object.__setattr__(self, "x", _frozen(x, np.float64))
        object.__setattr__(self, "y", _frozen(y, np.float64))

    @property
    def n(self) -> int:
        return self.x.size

    def __repr__(self):
        return f"StiefelFrame(n={self.n})"


def frame_to_polygon(f: StiefelFrame) -> PlanarPolygon:
    """Square z = x + i*y entrywise. Closure and normalization follow from
    the frame invariants, so the constructor checks always pass."""
    z = f.x + 1j * f.y
    return PlanarPolygon(z * z)


def principal_sqrt(edges) -> np.ndarray:
    """Entrywise square root on the principal branch.

    Arguments are taken in (-pi, pi], so results land in (-pi/2, pi/2]:
    every root has positive real part except for negative-real edges, which
    map to the positive imaginary axis. A -0.0 imaginary part is treated as
    +0.0 so the branch does not depend on the sign of a floating zero.
    """
    e = np.asarray(edges, dtype=np.complex128)
    theta = np.angle(e)
    theta = np.where(theta == -np.pi, np.pi, theta)
    return np.sqrt(np.abs(e)) * np.exp(0.5j * theta)


def polygon_to_frame(p: PlanarPolygon, signs=None) -> StiefelFrame:
    """Lift a polygon to a frame: z_k = signs_k * principal_sqrt(e_k).

    signs is a length-n sequence over {+1, -1}; omitted means all +1.
    Zero edges lift to zero entries regardless of sign.
    """
    z = principal_sqrt(p.edges)
    if signs is not None:
        s = np.asarray(signs)
        if s.shape != (p.n,) or not np.all(np.abs(s) == 1):
            raise ValueError("signs must be n values from {+1, -1}")
        z = z * s
    return StiefelFrame(z.real.copy(), z.imag.copy())


def cyclic_relabel(f: StiefelFrame, k: int) -> StiefelFrame:
    """Start the edge labeling k places later; k is reduced mod n."""
    k = int(k) % f.n
    return StiefelFrame(np.roll(f.x, -k), np.roll(f.y, -k))


def convexify(f: StiefelFrame) -> StiefelFrame:
    """Reorder the frame entries so the polygon's edges sort by argument.

    Sorting arguments into [0, 2*pi) with a stable sort makes the edge
    directions turn monotonically, which is exactly convexity. The edge
    multiset is untouched; only the labeling changes.
    """
    z = f.x + 1j * f.y
    e = z * z
    if np.any(np.abs(e) <= ZERO_EDGE_TOL):
        raise ZeroEdge("cannot order edges containing a zero edge")
    ang = np.mod(np.angle(e), 2.0 * np.pi)
    order = np.argsort(ang, kind="stable")
    return StiefelFrame(f.x[order], f.y[order])


class TriangleClass(enum.Enum):
    ACUTE = "acute"
    RIGHT = "right"
    OBTUSE = "obtuse"


class QuadClass(enum.Enum):
    CONVEX = "convex"
    REFLEX = "reflex"
    CROSSED = "crossed"


def _interior_angles(e) -> np.ndarray:
    # angle at the vertex between incoming edge e[k] and outgoing e[k+1]
    nxt = np.roll(e, -1)
    dots = (-e.conjugate() * nxt).real
    denom = np.abs(e) * np.abs(nxt)
    return np.arccos(np.clip(dots / denom, -1.0, 1.0))


def classify_triangle(p: PlanarPolygon) -> TriangleClass:
    """Acute, right, or obtuse by the largest interior angle.

    Right means within 1e-9 radians of pi/2; collinear triangles (any angle
    under 1e-9) raise Degenerate.
    """
    if p.n != 3:
        raise ValueError("classify_triangle expects n = 3")
    e = p.edges
    if np.any(np.abs(e) <= ZERO_EDGE_TOL):
        raise Degenerate("zero-length edge")
    angles = _interior_angles(e)
    if np.any(angles < ANGLE_TOL):
        raise Degenerate("collinear within tolerance")
    top = float(np.max(angles))
    if top > np.pi / 2 + ANGLE_TOL:
        return TriangleClass.OBTUSE
    if top >= np.pi / 2 - ANGLE_TOL:
        return TriangleClass.RIGHT
    return TriangleClass.ACUTE


def _cross2(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def _properly_intersects(p1, p2, q1, q2) -> bool:
    # strict straddle test: interiors cross, touching does not count
    o1 = _cross2(p2 - p1, q1 - p1)
    o2 = _cross2(p2 - p1, q2 - p1)
    o3 = _cross2(q2 - q1, p1 - q1)
    o4 = _cross2(q2 - q1, p2 - q1)
    return (o1 * o2 < 0.0) and (o3 * o4 < 0.0)


def classify_quadrilateral(p: PlanarPolygon) -> QuadClass:
    """Convex, reflex, or crossed; the crossed test runs first.

    Crossed means a pair of opposite edges properly intersects. Convex means
    all four turn cross products share a strict sign. Anything with a zero
    edge or three nearly collinear consecutive vertices raises Degenerate.
    """
    if p.n != 4:
        raise ValueError("classify_quadrilateral expects n = 4")
    e = p.edges
    lens = np.abs(e)
    if np.any(lens <= ZERO_EDGE_TOL):
        raise Degenerate("zero-length edge")
    nxt = np.roll(e, -1)
    turns = e.real * nxt.imag - e.imag * nxt.real
    sines = np.abs(turns) / (lens * np.roll(lens, -1))
    if np.any(sines <= 1e-12):
        raise Degenerate("three consecutive vertices collinear within tolerance")
    v = np.concatenate([[0j], np.cumsum(e)])
    v[4] = 0j
    if _properly_intersects(v[0], v[1], v[2], v[3]) or _properly_intersects(
        v[1], v[2], v[3], v[4]
    ):
        return QuadClass.CROSSED
    if np.all(turns > 0.0) or np.all(turns < 0.0):
        return QuadClass.CONVEX
    return QuadClass.REFLEX


def _point_segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a).real * ab.real + (p - a).imag * ab.imag) / denom
    t = min(1.0, max(0.0, t))
    return abs(a + t * ab - p)


def loop_winding(loop: np.ndarray, point: complex) -> int:
    """Signed winding of a closed vertex loop (last entry equals first)
    around a point strictly off the boundary. Crossing-counted, so the
    result is an exact integer."""
    w = 0
    for a, b in zip(loop[:-1], loop[1:]):
        if a.imag <= point.imag:
            if b.imag > point.imag and _cross2(b - a, point - a) > 0.0:
                w += 1
        elif b.imag <= point.imag and _cross2(b - a, point - a) < 0.0:
            w -= 1
    return w


def winding_number(p: PlanarPolygon, base: complex, query: complex) -> int:
    """Winding of the polygon placed at base around the query point.

    Raises OnBoundary when the query sits within 1e-12 of any edge segment.
    The vertex loop is closed back to base exactly, so the count is an
    integer even at the closure tolerance.
    """
    verts = p.vertices(base)
    loop = np.concatenate([verts[:-1], [verts[0]]])
    for a, b in zip(loop[:-1], loop[1:]):
        if _point_segment_distance(query, a, b) <= 1e-12:
            raise OnBoundary("query point lies on the boundary")
    return loop_winding(loop, query)
