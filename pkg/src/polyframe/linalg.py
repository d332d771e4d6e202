"""Small dense linear algebra used everywhere else.

Vectors are plain 1-D numpy arrays, real or complex. Inner products follow the
physics convention: the first argument is conjugated, so inner(a, b) is linear
in b. Nothing here allocates more than O(n).
"""

from dataclasses import dataclass

import numpy as np

from .errors import AntipodalPair, DegeneratePair

# sine-of-angle threshold below which a pair counts as parallel
PARALLEL_TOL = 1e-10


def inner(a, b):
    """Conjugate-first inner product. Returns a python scalar."""
    v = np.vdot(a, b)
    return complex(v) if np.iscomplexobj(a) or np.iscomplexobj(b) else float(v)


def norm(v) -> float:
    return float(np.linalg.norm(v))


def gram_schmidt_pair(u, v):
    """Orthonormalize (u, v) into (a, b), normalizing u first.

    Raises DegeneratePair when u is numerically zero or v is parallel to u
    (angle sine at most 1e-10).
    """
    u = np.asarray(u)
    v = np.asarray(v)
    nu = norm(u)
    if not nu > 1e-30:
        raise DegeneratePair("first vector is numerically zero")
    a = u / nu
    w = v - inner(a, v) * a
    nv = norm(v)
    nw = norm(w)
    if not (nv > 1e-30 and nw / nv > PARALLEL_TOL):
        raise DegeneratePair("second vector is parallel to the first")
    return a, w / nw


def qr_sign_corrected(a):
    """Reduced QR of an n x k matrix with diag(R) forced real positive.

    numpy's LAPACK-backed qr returns a factor with arbitrary column phases
    (in practice a nonpositive (1,1) entry); this multiplies each Q column by
    the conjugate phase of the matching R diagonal so the result agrees with
    classical Gram-Schmidt. Raises DegeneratePair on rank-deficient input,
    using the same parallel tolerance as gram_schmidt_pair.
    """
    a = np.asarray(a)
    q, r = np.linalg.qr(a)
    d = np.diagonal(r)
    col_norms = np.linalg.norm(a, axis=0)
    if np.any(col_norms <= 1e-30) or np.any(np.abs(d) / col_norms <= PARALLEL_TOL):
        raise DegeneratePair("columns are numerically dependent")
    q = q * np.conj(d / np.abs(d))
    return q


def direct_rotation(a, b, t: float):
    """Point at parameter t on the shortest great circle from a to b.

    Both inputs must be unit vectors with real inner product (complex callers
    phase-align first; only the real part drives the angle). Returns
    cos(t*theta)*a + sin(t*theta)*b_perp where theta = arccos(<a, b>).
    Raises AntipodalPair when <a, b> <= -1 + 1e-10. When theta < 1e-12 the
    rotation collapses to a itself.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    c = inner(a, b)
    cr = c.real if isinstance(c, complex) else c
    if cr <= -1.0 + 1e-10:
        raise AntipodalPair("endpoints are antipodal; rotation plane undefined")
    theta = float(np.arccos(np.clip(cr, -1.0, 1.0)))
    if theta < 1e-12:
        return a.copy()
    w = b - c * a
    nw = norm(w)
    if not nw > 0.0:
        return a.copy()
    return np.cos(t * theta) * a + np.sin(t * theta) * (w / nw)


def rotation_angle(a, b) -> float:
    """arccos of the real inner product, clamped into [0, pi]."""
    c = inner(a, b)
    cr = c.real if isinstance(c, complex) else c
    return float(np.arccos(np.clip(cr, -1.0, 1.0)))


@dataclass(frozen=True, eq=False)
class Svd2Result:
    """SVD of a 2x2 matrix: M = U @ diag(sigma) @ V.conj().T."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


def _complement(v):
    # unit vector Hermitian-orthogonal to unit v, 2 components
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def svd_2x2(m) -> Svd2Result:
    """Closed-form SVD of a 2x2 real or complex matrix.

    Singular values come from the eigenvalues of M*M: the larger as
    sqrt of the larger root, the smaller through |det M| / sigma1 for
    stability. Column phases are fixed deterministically (the pivot entry
    of each U column is made real nonnegative) so repeated calls agree
    bit for bit. A zero matrix returns sigma = (0, 0) with identity factors.
    """
    m = np.asarray(m)
    if m.shape != (2, 2):
        raise ValueError("svd_2x2 expects a 2x2 matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("svd_2x2 requires finite entries")
    cplx = np.iscomplexobj(m)
    dt = np.complex128 if cplx else np.float64
    m = m.astype(dt)

    g = m.conj().T @ m
    g11 = g[0, 0].real
    g22 = g[1, 1].real
    g12 = g[0, 1]
    tr = g11 + g22
    disc = float(np.hypot(g11 - g22, 2.0 * abs(g12)))
    lam1 = 0.5 * (tr + disc)
    s1 = float(np.sqrt(lam1))
    if s1 == 0.0:
        eye = np.eye(2, dtype=dt)
        return Svd2Result(eye, np.zeros(2), eye.copy())
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    s2 = float(abs(det)) / s1

    # eigenvector of G for lam1: pick the better-conditioned residual row
    r1 = np.array([g11 - lam1, g12])
    r2 = np.array([np.conj(g12), g22 - lam1])
    r = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
    nr = np.linalg.norm(r)
    if nr <= 1e-30 * max(tr, 1e-300):
        v1 = np.array([1.0, 0.0], dtype=dt)
    else:
        v1 = np.array([r[1], -r[0]]) / nr
    v2 = _complement(v1)

    u1 = m @ v1
    nu1 = np.linalg.norm(u1)
    u1 = u1 / nu1 if nu1 > 0 else np.array([1.0, 0.0], dtype=dt)
    u2 = _complement(u1)
    c = np.vdot(u2, m @ v2)
    if abs(c) > 0:
        u2 = u2 * (c / abs(c))

    u = np.column_stack([u1, u2])
    v = np.column_stack([v1, v2])
    for k in range(2):
        p = u[0, k] if abs(u[0, k]) > 1e-12 else u[1, k]
        if abs(p) > 0:
            ph = np.conj(p) / abs(p)
            u[:, k] = u[:, k] * ph
            v[:, k] = v[:, k] * ph
    if not cplx:
        u = u.real
        v = v.real
    return Svd2Result(u, np.array([s1, s2]), v)
