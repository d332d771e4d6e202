"""Deterministic file outputs: SVG drawings, SVG tilings, OBJ/CSV exports.

All writers format floats with a fixed precision and emit keys in a fixed
order, so the same input always produces the same bytes. SVG is hand-rolled
(a few path elements need no library); spatial polygons export as OBJ
polylines or CSV vertex tables with full 17-digit precision.
"""

from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, IoFailure
from .planar import PlanarPolygon, classify_quadrilateral
from .spatial import SpacePolygon

DEFAULT_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
)

_SVG_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'


def _f(x: float) -> str:
    return f"{x:.6f}"


def _write(out, text: str):
    try:
        out.write(text.encode("utf-8"))
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _svg_open(xmin, ymin, w, h) -> str:
    return (
        _SVG_HEADER
        + f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(xmin)} {_f(ymin)} {_f(w)} {_f(h)}">\n'
    )


def _path_d(points) -> str:
    # SVG y grows downward; negate the imaginary part
    coords = [f"{_f(p.real)} {_f(-p.imag)}" for p in points]
    return "M " + " L ".join(coords) + " Z"


def _bounds(point_sets, margin: float):
    xs = np.concatenate([np.asarray(p).real for p in point_sets])
    ys = np.concatenate([-np.asarray(p).imag for p in point_sets])
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(ys.min()), float(ys.max())
    span = max(xmax - xmin, ymax - ymin, 1e-6)
    pad = margin * span
    return xmin - pad, ymin - pad, (xmax - xmin) + 2 * pad, (ymax - ymin) + 2 * pad


def emit_svg(polygons, out, *, bases=None, colors=None, fill: bool = False,
             stroke_width: float | None = None, viewbox=None, margin: float = 0.05):
    """Write polygons as one SVG path element each.

    bases places each polygon (default: all at the origin); colors cycles
    through DEFAULT_PALETTE when omitted. viewbox overrides the fitted
    bounding box, which morph sequences use to keep a steady camera.
    An empty polygon list still produces a valid document.
    """
    polygons = list(polygons)
    if bases is None:
        bases = [0j] * len(polygons)
    if len(bases) != len(polygons):
        raise ValueError("bases must match polygons")
    loops = [p.vertices(b)[:-1] for p, b in zip(polygons, bases)]
    if viewbox is not None:
        xmin, ymin, w, h = viewbox
    elif loops:
        xmin, ymin, w, h = _bounds(loops, margin)
    else:
        xmin, ymin, w, h = 0.0, 0.0, 1.0, 1.0
    sw = stroke_width if stroke_width is not None else 0.008 * max(w, h)
    _write(out, _svg_open(xmin, ymin, w, h))
    for i, loop in enumerate(loops):
        color = colors[i] if colors is not None else DEFAULT_PALETTE[i % len(DEFAULT_PALETTE)]
        fill_attr = color if fill else "none"
        stroke_attr = "none" if fill else color
        _write(
            out,
            f'<path d="{_path_d(loop)}" fill="{fill_attr}" stroke="{stroke_attr}" '
            f'stroke-width="{_f(sw)}" stroke-linejoin="round"/>\n',
        )
    _write(out, "</svg>\n")


@dataclass(frozen=True)
class TilingSpec:
    """A quadrilateral and the patch size to tile with it."""

    quad: PlanarPolygon
    rows: int
    cols: int

    def __post_init__(self):
        if self.quad.n != 4:
            raise ValueError("tiling needs a quadrilateral")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be positive")
        if self.rows * self.cols > 1_000_000:
            raise ValueError("patch too large (rows*cols capped at 1e6)")


def _winding_sums(loops: np.ndarray, point: complex) -> int:
    # vectorized crossing count over an (m, 5) array of closed loops
    a = loops[:, :-1]
    b = loops[:, 1:]
    rel = point - a
    cross = (b - a).real * rel.imag - (b - a).imag * rel.real
    up = (a.imag <= point.imag) & (b.imag > point.imag) & (cross > 0.0)
    down = (a.imag > point.imag) & (b.imag <= point.imag) & (cross < 0.0)
    return int(up.sum()) - int(down.sum())


def _min_edge_distance(loops: np.ndarray, point: complex) -> float:
    a = loops[:, :-1].ravel()
    b = loops[:, 1:].ravel()
    ab = b - a
    denom = np.abs(ab) ** 2
    t = np.where(denom > 0, ((point - a).real * ab.real + (point - a).imag * ab.imag)
                 / np.where(denom > 0, denom, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return float(np.min(np.abs(a + t * ab - point)))


def tiling_copies(quad: PlanarPolygon, rows: int, cols: int) -> np.ndarray:
    """Vertex loops of the 2*rows*cols tiles covering the patch.

    The unit block is the quad plus its 180-degree rotation about the first
    edge's midpoint, translated by the diagonal lattice d1 = v2 - v0,
    d2 = v3 - v1. Orientation is normalized so the winding-number sum over
    all copies is +1 at interior probe points. Returns an array of shape
    (2*rows*cols, 4); degenerate quads are rejected.
    """
    classify_quadrilateral(quad)  # Degenerate gate
    v = quad.vertices()[:4]
    d1 = v[2] - v[0]
    d2 = v[3] - v[1]
    cell = abs(d1.real * d2.imag - d1.imag * d2.real)
    if cell <= 1e-12:
        raise Degenerate("lattice cell is flat")
    rot = 2 * ((v[0] + v[1]) / 2) - v
    offsets = (
        np.arange(cols)[:, None] * d1 + np.arange(rows)[None, :] * d2
    ).ravel()
    copies = np.concatenate(
        [v[None, :] + offsets[:, None], rot[None, :] + offsets[:, None]], axis=0
    )
    # interleave original/rotated per cell so color alternation is local
    order = np.arange(2 * rows * cols).reshape(2, -1).T.ravel()
    copies = copies[order]

    loops = np.concatenate([copies, copies[:, :1]], axis=1)
    center = v.mean() + (cols // 2) * d1 + (rows // 2) * d2
    scale = 0.25 * min(abs(d1), abs(d2))
    probe_offsets = [0j]
    for radius in (0.3, 0.7, 1.3):
        for k in range(8):
            probe_offsets.append(radius * scale * np.exp(2j * np.pi * (k + 0.37) / 8))
    for off in probe_offsets:
        probe = center + off
        if _min_edge_distance(loops, probe) <= 1e-9:
            continue
        s = _winding_sums(loops, probe)
        if s == 1:
            return copies
        if s == -1:
            return copies[:, ::-1]
    raise Degenerate("no probe point could fix the tiling orientation")


def emit_tiling(spec: TilingSpec, out):
    """Write the tiling patch as an SVG, filled, originals and rotated
    copies in alternating palette colors."""
    copies = tiling_copies(spec.quad, spec.rows, spec.cols)
    loops = np.concatenate([copies, copies[:, :1]], axis=1)
    xmin, ymin, w, h = _bounds([c for c in copies], 0.02)
    _write(out, _svg_open(xmin, ymin, w, h))
    for i, loop in enumerate(loops):
        color = DEFAULT_PALETTE[i % 2]
        _write(out, f'<path d="{_path_d(loop[:-1])}" fill="{color}" stroke="none"/>\n')
    _write(out, "</svg>\n")


def export_space_polygon(p: SpacePolygon, fmt: str, out):
    """Write a spatial polygon's vertex walk.

    "csv_vertices": x,y,z header plus the n cumulative vertices, full
    precision. "obj_polyline": the same vertices as v lines and a closed
    l line (1 2 ... n 1). The walk starts after the first edge, so the
    final vertex is the full edge sum, origin up to closure error.
    """
    verts = np.cumsum(p.edges, axis=0)
    if fmt == "csv_vertices":
        _write(out, "x,y,z\n")
        for row in verts:
            _write(out, "%.17g,%.17g,%.17g\n" % (row[0], row[1], row[2]))
    elif fmt == "obj_polyline":
        for row in verts:
            _write(out, "v %.17g %.17g %.17g\n" % (row[0], row[1], row[2]))
        idx = " ".join(str(i) for i in range(1, p.n + 1))
        _write(out, f"l {idx} 1\n")
    else:
        raise ValueError("fmt must be 'csv_vertices' or 'obj_polyline'")
