"""Haar-uniform sampling of frames and polygons, plus ensemble statistics.

Randomness comes from numpy's PCG64 stream behind a fixed seed. Batched
draws fill arrays in stream order, so a block of samples equals the same
samples drawn one by one; ensembles exploit that by cutting the work into
blocks whose seeds are seed + block index, which makes the result
independent of worker count and lets shards be farmed out.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial import QhullError

from .errors import SamplingFailure
from .linalg import PARALLEL_TOL
from .planar import PlanarPolygon, StiefelFrame, convexify, frame_to_polygon
from .spatial import HermitianFrame, SpacePolygon, frame_to_space_polygon

MAX_RETRIES = 8


class SeededRng:
    """Deterministic random source: PCG64 stream with ziggurat normals.

    The same seed always reproduces the same draw sequence (numpy pins the
    bit stream of Generator.standard_normal across platforms).
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def normal(self, shape) -> np.ndarray:
        return self._gen.standard_normal(shape)

    def uniform(self, low: float = 0.0, high: float = 1.0, shape=None) -> np.ndarray:
        return self._gen.uniform(low, high, shape)

    def spawn(self, index: int) -> "SeededRng":
        """Independent-by-convention stream seeded seed + index."""
        return SeededRng(self.seed + int(index))

    def __repr__(self):
        return f"SeededRng(seed={self.seed})"


def _draw_pair(n: int, rng: SeededRng, cplx: bool):
    if cplx:
        g = rng.normal((2, 2, n))
        return g[0, 0] + 1j * g[0, 1], g[1, 0] + 1j * g[1, 1]
    g = rng.normal((2, n))
    return g[0], g[1]


def _draw_pair_batch(n: int, count: int, rng: SeededRng, cplx: bool):
    if cplx:
        g = rng.normal((count, 2, 2, n))
        return g[:, 0, 0] + 1j * g[:, 0, 1], g[:, 1, 0] + 1j * g[:, 1, 1]
    g = rng.normal((count, 2, n))
    return g[:, 0], g[:, 1]


def _gram_schmidt_batch(u, v):
    """Row-wise Gram-Schmidt. Returns (a, b, bad) where bad flags rows
    that hit the degenerate-pair tolerance."""
    nu = np.linalg.norm(u, axis=1)
    nv = np.linalg.norm(v, axis=1)
    safe_nu = np.where(nu > 0, nu, 1.0)
    a = u / safe_nu[:, None]
    c = np.sum(np.conj(a) * v, axis=1)
    w = v - c[:, None] * a
    nw = np.linalg.norm(w, axis=1)
    bad = (nu <= 1e-30) | (nv <= 1e-30) | (nw <= PARALLEL_TOL * np.where(nv > 0, nv, 1.0))
    safe_nw = np.where(nw > 0, nw, 1.0)
    b = w / safe_nw[:, None]
    return a, b, bad


def _sample_columns_batch(n: int, count: int, rng: SeededRng, cplx: bool):
    u, v = _draw_pair_batch(n, count, rng, cplx)
    a, b, bad = _gram_schmidt_batch(u, v)
    rounds = 0
    while np.any(bad):
        rounds += 1
        if rounds > MAX_RETRIES:
            raise SamplingFailure("degenerate Gaussian pairs persist after retries")
        idx = np.flatnonzero(bad)
        u2, v2 = _draw_pair_batch(n, idx.size, rng, cplx)
        a2, b2, bad2 = _gram_schmidt_batch(u2, v2)
        a[idx] = a2
        b[idx] = b2
        bad = np.zeros(len(a), dtype=bool)
        bad[idx] = bad2
    return a, b


def sample_stiefel(n: int, rng: SeededRng) -> StiefelFrame:
    """One Haar-uniform real frame via Gram-Schmidt on a Gaussian pair."""
    if n < 3:
        raise ValueError("n must be at least 3")
    for _ in range(MAX_RETRIES):
        u, v = _draw_pair(n, rng, cplx=False)
        a, b, bad = _gram_schmidt_batch(u[None, :], v[None, :])
        if not bad[0]:
            return StiefelFrame(a[0], b[0])
    raise SamplingFailure("degenerate Gaussian pairs persist after retries")


def sample_stiefel_complex(n: int, rng: SeededRng) -> HermitianFrame:
    """One Haar-uniform complex frame; real and imaginary parts are
    independent standard normals (scale washes out in normalization)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    for _ in range(MAX_RETRIES):
        u, v = _draw_pair(n, rng, cplx=True)
        a, b, bad = _gram_schmidt_batch(u[None, :], v[None, :])
        if not bad[0]:
            return HermitianFrame(a[0], b[0])
    raise SamplingFailure("degenerate Gaussian pairs persist after retries")


def sample_polygon(n: int, rng: SeededRng) -> PlanarPolygon:
    return frame_to_polygon(sample_stiefel(n, rng))


def sample_space_polygon(n: int, rng: SeededRng) -> SpacePolygon:
    return frame_to_space_polygon(sample_stiefel_complex(n, rng))


def sample_convex_polygon(n: int, rng: SeededRng) -> PlanarPolygon:
    """Haar edge multiset, reordered by argument into its convex polygon."""
    from .errors import ZeroEdge

    for _ in range(MAX_RETRIES):
        try:
            return frame_to_polygon(convexify(sample_stiefel(n, rng)))
        except ZeroEdge:
            continue
    raise SamplingFailure("zero edges persist after retries")


def random_rotation_matrix(rng: SeededRng) -> np.ndarray:
    """Uniform random 3x3 rotation from a normalized Gaussian quaternion."""
    q = rng.normal(4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


@dataclass(frozen=True)
class EnsembleReport:
    """Summary statistics of a Monte Carlo polygon ensemble."""

    kind: str
    n: int
    sample_count: int
    seed: int
    mean_edge_length: float
    mean_diameter: float
    obtuse_fraction: float | None = None
    class_fractions: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.obtuse_fraction is not None and not 0.0 <= self.obtuse_fraction <= 1.0:
            raise ValueError("obtuse_fraction out of [0, 1]")
        if self.class_fractions is not None:
            if any(not 0.0 <= c <= 1.0 for c in self.class_fractions):
                raise ValueError("class fractions out of [0, 1]")
            if abs(sum(self.class_fractions) - 1.0) > 1e-12:
                raise ValueError("class fractions must sum to 1")


def _block_size(n: int) -> int:
    # deterministic in n alone so worker count cannot perturb the stream
    return max(16, min(4096, 4_000_000 // (2 * max(n, 1))))


def _obtuse_mask(edges) -> np.ndarray:
    lens = np.abs(edges)
    nxt = np.roll(edges, -1, axis=1)
    cosang = (-np.conj(edges) * nxt).real / (lens * np.roll(lens, -1, axis=1))
    return np.any(cosang < -np.sin(1e-9), axis=1)


def _cross2_cols(a, b):
    return a.real * b.imag - a.imag * b.real


def _quad_class_codes(edges) -> np.ndarray:
    """0 convex, 1 reflex, 2 crossed, batch over rows; the crossed test
    wins, matching classify_quadrilateral."""
    v0 = np.zeros(len(edges), dtype=np.complex128)
    v1 = edges[:, 0]
    v2 = v1 + edges[:, 1]
    v3 = v2 + edges[:, 2]

    def straddles(p1, p2, q1, q2):
        o1 = _cross2_cols(p2 - p1, q1 - p1)
        o2 = _cross2_cols(p2 - p1, q2 - p1)
        o3 = _cross2_cols(q2 - q1, p1 - q1)
        o4 = _cross2_cols(q2 - q1, p2 - q1)
        return (o1 * o2 < 0.0) & (o3 * o4 < 0.0)

    crossed = straddles(v0, v1, v2, v3) | straddles(v1, v2, v3, v0)
    nxt = np.roll(edges, -1, axis=1)
    turns = _cross2_cols(edges, nxt)
    convex = np.all(turns > 0.0, axis=1) | np.all(turns < 0.0, axis=1)
    codes = np.ones(len(edges), dtype=np.int64)
    codes[convex] = 0
    codes[crossed] = 2
    return codes


def _diameters(verts) -> np.ndarray:
    """Max pairwise vertex distance per sample; verts is (count, n) complex."""
    count, n = verts.shape
    if n <= 16:
        d = np.abs(verts[:, :, None] - verts[:, None, :])
        return d.reshape(count, -1).max(axis=1)
    out = np.empty(count)
    for i in range(count):
        row = verts[i]
        if n <= 1000:
            out[i] = np.abs(row[:, None] - row[None, :]).max()
        else:
            pts = np.column_stack([row.real, row.imag])
            try:
                hull = pts[ConvexHull(pts).vertices]
            except QhullError:
                out[i] = np.abs(row[:, None] - row[None, :]).max()
                continue
            out[i] = np.abs(
                (hull[:, 0] + 1j * hull[:, 1])[:, None]
                - (hull[:, 0] + 1j * hull[:, 1])[None, :]
            ).max()
    return out


def _ensemble_block(kind: str, n: int, count: int, rng: SeededRng) -> dict:
    a, b = _sample_columns_batch(n, count, rng, cplx=False)
    z = a + 1j * b
    edges = z * z
    stats = {
        "count": count,
        "edge_sum": float(np.abs(edges).mean(axis=1).sum()),
    }
    verts = np.cumsum(edges, axis=1)
    verts = np.concatenate([np.zeros((count, 1), dtype=np.complex128), verts[:, :-1]], axis=1)
    stats["diam_sum"] = float(_diameters(verts).sum())
    if kind == "triangle":
        stats["obtuse"] = int(_obtuse_mask(edges).sum())
    elif kind == "quad":
        codes = _quad_class_codes(edges)
        stats["classes"] = np.bincount(codes, minlength=3)
    return stats


def ensemble_report(kind: str, samples: int, rng: SeededRng, n: int | None = None,
                    workers: int = 1) -> EnsembleReport:
    """Monte Carlo summary over Haar polygons.

    kind is "triangle", "quad", or "ngon" (the first two pin n to 3 and 4;
    ngon requires n). Work is cut into fixed-size blocks, block b drawing
    from SeededRng(seed + b), so reports are reproducible and workers > 1
    changes wall time, never statistics.
    """
    if kind == "triangle":
        if n not in (None, 3):
            raise ValueError("triangle ensembles have n = 3")
        n = 3
    elif kind == "quad":
        if n not in (None, 4):
            raise ValueError("quad ensembles have n = 4")
        n = 4
    elif kind == "ngon":
        if n is None or n < 3:
            raise ValueError("ngon ensembles need n >= 3")
        n = int(n)
    else:
        raise ValueError("kind must be triangle, quad, or ngon")
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be positive")
    if workers < 1:
        raise ValueError("workers must be positive")

    block = _block_size(n)
    nblocks = math.ceil(samples / block)
    sizes = [block] * (nblocks - 1) + [samples - block * (nblocks - 1)]

    def run(bi: int) -> dict:
        return _ensemble_block(kind, n, sizes[bi], rng.spawn(bi))

    if workers == 1:
        results = [run(bi) for bi in range(nblocks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(nblocks)))

    total = sum(r["count"] for r in results)
    mean_edge = sum(r["edge_sum"] for r in results) / total
    mean_diam = sum(r["diam_sum"] for r in results) / total
    obtuse = None
    classes = None
    if kind == "triangle":
        obtuse = sum(r["obtuse"] for r in results) / total
    elif kind == "quad":
        counts = np.sum([r["classes"] for r in results], axis=0)
        classes = tuple(float(c) / total for c in counts)
    return EnsembleReport(
        kind=kind,
        n=n,
        sample_count=total,
        seed=rng.seed,
        mean_edge_length=mean_edge,
        mean_diameter=mean_diam,
        obtuse_fraction=obtuse,
        class_fractions=classes,
    )
