"""Continuous paths between frames, hence between polygons.

Two constructions are provided. stiefel_path rotates the first column
directly and drags the second along by projection; it stays inside the
frame manifold but is not length-optimal. grassmann_geodesic aligns both
frames by the SVD of their 2x2 overlap matrix and rotates the aligned
columns at constant rates (the principal angles); the endpoint polygons are
then congruent, not equal, to the inputs. Both return a MorphPath whose
eval(t) is a valid frame for every t in [0, 1].
"""

import itertools

import numpy as np

from .errors import AntipodalPair, DegenerateProjection, DegeneratePlanes, TooLarge
from .linalg import direct_rotation, inner, norm, svd_2x2
from .planar import PlanarPolygon, StiefelFrame, cyclic_relabel, polygon_to_frame
from .spatial import HermitianFrame

from dataclasses import dataclass


@dataclass(frozen=True)
class PrincipalAngles:
    """Principal angles of the aligned frame planes, theta_i = arccos(sigma_i).

    sigma_1 >= sigma_2 are the singular values of the overlap matrix, so
    theta1 <= theta2; theta1 governs the x rotation, theta2 the y rotation.
    """

    theta1: float
    theta2: float

    def __post_init__(self):
        if not (-1e-12 <= self.theta1 <= self.theta2 <= np.pi / 2 + 1e-12):
            raise ValueError("principal angles must satisfy 0 <= theta1 <= theta2 <= pi/2")


class MorphPath:
    """A path of frames; eval(t) for t in [0, 1] returns a frame."""

    def __init__(self, kind: str, start, end, fn, angles: PrincipalAngles | None = None):
        self.kind = kind
        self.start = start
        self.end = end
        self.angles = angles
        self._fn = fn

    def eval(self, t: float):
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise ValueError("t must lie in [0, 1]")
        return self._fn(t)

    def __repr__(self):
        return f"MorphPath(kind={self.kind!r}, n={self.start.n})"


def _frame_type(f0, f1):
    if type(f0) is not type(f1):
        raise TypeError("both endpoints must be the same frame type")
    if not isinstance(f0, (StiefelFrame, HermitianFrame)):
        raise TypeError("endpoints must be StiefelFrame or HermitianFrame")
    if f0.n != f1.n:
        raise ValueError("endpoints must have the same n")
    return type(f0)


def _phase_aligned(ref, v):
    # rotate v by a unit complex so <ref, v> becomes real nonnegative
    c = inner(ref, v)
    a = abs(c)
    return v if a == 0.0 else v * (np.conj(c) / a)


def _check_not_antipodal(a, b, label: str):
    c = inner(a, b)
    cr = c.real if isinstance(c, complex) else c
    if cr <= -1.0 + 1e-10:
        raise AntipodalPair(f"{label} endpoints are antipodal")


def stiefel_path(f0, f1, swap_roles: bool = False):
    """Rotate one column directly, carry the other by projection.

    x(t) follows the great circle from x0 to x1; y(t) is the y rotation
    projected onto the orthogonal complement of x(t) and renormalized
    (swap_roles reverses the two roles). Complex endpoints are first
    phase-aligned per column, so eval(1) is the aligned copy of f1 (for
    real frames, f1 itself); the aligned frame is stored as .end.
    Raises DegenerateProjection at any t where the projection vanishes.
    """
    cls = _frame_type(f0, f1)
    x1, y1 = f1.x, f1.y
    if cls is HermitianFrame:
        x1 = _phase_aligned(f0.x, x1)
        y1 = _phase_aligned(f0.y, y1)
    end = cls(x1, y1)
    lead = ("y" if swap_roles else "x")
    _check_not_antipodal(f0.x, x1, "x")
    _check_not_antipodal(f0.y, y1, "y")

    def fn(t: float):
        xt = direct_rotation(f0.x, x1, t)
        yt = direct_rotation(f0.y, y1, t)
        if swap_roles:
            lead_v, trail_v = yt, xt
        else:
            lead_v, trail_v = xt, yt
        w = trail_v - inner(lead_v, trail_v) * lead_v
        nw = norm(w)
        if nw <= 1e-10:
            raise DegenerateProjection(f"projected {'x' if swap_roles else 'y'} vanishes at t={t}")
        trail_v = w / nw
        if swap_roles:
            return cls(trail_v, lead_v)
        return cls(lead_v, trail_v)

    path = MorphPath("stiefel", f0, end, fn)
    path.lead_column = lead
    return path


def grassmann_align(f0, f1):
    """Rotate each frame inside its own plane so the columns pair off.

    Returns (g0, g1, angles) where g0 spans the same plane as f0, g1 the
    same as f1, the overlaps <g0.x, g1.x> = sigma1 and <g0.y, g1.y> = sigma2
    are real nonnegative, and the cross overlaps vanish. Raises
    DegeneratePlanes when even sigma1 is zero (fully orthogonal planes).
    """
    cls = _frame_type(f0, f1)
    m0 = np.column_stack([f0.x, f0.y])
    m1 = np.column_stack([f1.x, f1.y])
    res = svd_2x2(m0.conj().T @ m1)
    if res.sigma[0] <= 1e-10:
        raise DegeneratePlanes("frame planes are completely orthogonal")
    u, v = res.u, res.v
    if res.sigma[0] - res.sigma[1] <= 1e-10:
        # equal overlaps leave a shared rotor free; pin g0 to f0 itself
        v = v @ u.conj().T
        u = np.eye(2, dtype=u.dtype)
    g0m = m0 @ u
    g1m = m1 @ v
    sig = np.clip(res.sigma, 0.0, 1.0)
    angles = PrincipalAngles(float(np.arccos(sig[0])), float(np.arccos(sig[1])))
    return (
        cls(g0m[:, 0], g0m[:, 1]),
        cls(g1m[:, 0], g1m[:, 1]),
        angles,
    )


def grassmann_geodesic(f0, f1):
    """Constant-speed rotation between the aligned frames.

    After alignment the two rotation planes (x's and y's) are mutually
    orthogonal, so rotating both columns simultaneously keeps the frame
    orthonormal for every t. The path starts at g0 and ends at g1; as
    polygons these are congruent copies of the inputs.
    """
    g0, g1, angles = grassmann_align(f0, f1)
    cls = type(g0)

    def fn(t: float):
        return cls(direct_rotation(g0.x, g1.x, t), direct_rotation(g0.y, g1.y, t))

    return MorphPath("grassmann_geodesic", g0, g1, fn, angles=angles)


def path_length(path: MorphPath, steps: int = 256) -> float:
    """Polyline length of the path in frame space (both columns stacked)."""
    if steps < 1:
        raise ValueError("steps must be positive")
    total = 0.0
    prev = path.eval(0.0)
    for k in range(1, steps + 1):
        cur = path.eval(k / steps)
        total += float(np.sqrt(norm(cur.x - prev.x) ** 2 + norm(cur.y - prev.y) ** 2))
        prev = cur
    return total


def lift_variants(p: PlanarPolygon, max_n: int = 20) -> list[StiefelFrame]:
    """All 2^n sign choices of the square-root lift, +1-first order.

    Enumeration is capped at min(max_n, 20) edges; beyond that raises
    TooLarge rather than trying to build 2^n frames.
    """
    cap = min(int(max_n), 20)
    if p.n > cap:
        raise TooLarge(f"2^{p.n} lifts exceed the enumeration cap (n <= {cap})")
    out = []
    for signs in itertools.product((1, -1), repeat=p.n):
        out.append(polygon_to_frame(p, np.array(signs)))
    return out


def best_lift_morph(p0: PlanarPolygon, p1: PlanarPolygon, method: str = "geodesic",
                    steps: int = 33, max_n: int = 12):
    """Shortest morph from the canonical lift of p0 over all lifts of p1.

    Brute force over 2^n sign vectors times n cyclic relabelings of p1,
    comparing sampled path lengths; n is capped at min(max_n, 12). Returns
    (path, k, signs) for the winning relabeling and sign vector. Candidates
    whose construction fails (antipodal or degenerate) are skipped.
    """
    if p0.n != p1.n:
        raise ValueError("polygons must have the same n")
    cap = min(int(max_n), 12)
    if p0.n > cap:
        raise TooLarge(f"brute-force search capped at n <= {cap}")
    if method not in ("geodesic", "stiefel"):
        raise ValueError("method must be 'geodesic' or 'stiefel'")
    f0 = polygon_to_frame(p0)
    best = None
    for signs in itertools.product((1, -1), repeat=p1.n):
        f1 = polygon_to_frame(p1, np.array(signs))
        for k in range(p1.n):
            cand = cyclic_relabel(f1, k)
            try:
                path = (grassmann_geodesic if method == "geodesic" else stiefel_path)(f0, cand)
                length = path_length(path, steps)
            except (AntipodalPair, DegenerateProjection, DegeneratePlanes):
                continue
            if best is None or length < best[0]:
                best = (length, path, k, signs)
    if best is None:
        raise DegenerateProjection("no lift admitted a valid path")
    return best[1], best[2], best[3]
