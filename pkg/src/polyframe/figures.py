"""Matplotlib renderings of ensemble reports (the CLI's --figures path).

Figures are illustrations, not data: each one redraws a handful of samples
from the report's seed (block 0 of the ensemble stream, so the drawings are
actual ensemble members) and saves a PNG. Agg output is byte-deterministic,
which keeps the CLI's determinism contract intact; the delimited report
remains the machine-readable artifact.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import Degenerate
from .planar import classify_quadrilateral, frame_to_polygon
from .sampling import EnsembleReport, SeededRng, _obtuse_mask, _sample_columns_batch, sample_polygon

_OBTUSE_COLOR = "#d62728"
_ACUTE_COLOR = "#1f77b4"
_QUAD_COLORS = {"convex": "#2ca02c", "reflex": "#9467bd", "crossed": "#ff7f0e"}


def _grid_of_triangles(ax, seed: int, count: int = 204, cols: int = 17):
    a, b = _sample_columns_batch(3, count, SeededRng(seed), cplx=False)
    edges = (a + 1j * b) ** 2
    obtuse = _obtuse_mask(edges)
    verts = np.concatenate(
        [np.zeros((count, 1), dtype=np.complex128), np.cumsum(edges, axis=1)[:, :-1]], axis=1
    )
    centered = verts - verts.mean(axis=1, keepdims=True)
    spans = np.abs(centered).max(axis=1)
    for i in range(count):
        row, col = divmod(i, cols)
        pts = centered[i] * (0.42 / spans[i]) + (col - 1j * row)
        xy = np.column_stack([pts.real, pts.imag])
        color = _OBTUSE_COLOR if obtuse[i] else _ACUTE_COLOR
        ax.fill(xy[:, 0], xy[:, 1], facecolor=color, edgecolor="black", linewidth=0.3)
    ax.set_aspect("equal")
    ax.set_axis_off()


def _triangle_figure(report: EnsembleReport, path):
    fig, ax = plt.subplots(figsize=(8.5, 6.5))
    _grid_of_triangles(ax, report.seed)
    exact = 1.5 - 3.0 * np.log(2.0) / np.pi
    ax.set_title(
        f"obtuse fraction {report.obtuse_fraction:.5f} over {report.sample_count} samples"
        f" (exact {exact:.5f})"
    )
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _quad_examples(seed: int, tries: int = 2000) -> dict:
    rng = SeededRng(seed)
    found = {}
    for _ in range(tries):
        p = sample_polygon(4, rng)
        try:
            cls = classify_quadrilateral(p).value
        except Degenerate:
            continue
        if cls not in found:
            found[cls] = p
        if len(found) == 3:
            break
    return found


def _quad_figure(report: EnsembleReport, path):
    fig, axes = plt.subplots(1, 4, figsize=(11, 3.2))
    labels = ("convex", "reflex", "crossed")
    axes[0].bar(labels, report.class_fractions,
                color=[_QUAD_COLORS[k] for k in labels])
    axes[0].axhline(1.0 / 3.0, color="black", linewidth=1, linestyle="--")
    axes[0].set_ylim(0, 0.5)
    axes[0].set_title(f"{report.sample_count} samples")
    examples = _quad_examples(report.seed)
    for ax, label in zip(axes[1:], labels):
        ax.set_aspect("equal")
        ax.set_axis_off()
        p = examples.get(label)
        if p is None:
            continue
        v = p.vertices()[:-1]
        ax.fill(v.real, v.imag, facecolor="none", edgecolor=_QUAD_COLORS[label], linewidth=2)
        ax.set_title(label)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _ngon_figure(report: EnsembleReport, path):
    p = sample_polygon(report.n, SeededRng(report.seed))
    v = p.vertices()
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(v.real, v.imag, color=_ACUTE_COLOR, linewidth=1.2)
    ax.set_aspect("equal")
    ax.set_title(
        f"n={report.n}: mean edge {report.mean_edge_length:.3e}, "
        f"mean diameter {report.mean_diameter:.4f}"
    )
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_report_figure(report: EnsembleReport, directory) -> list:
    """Render the figure matching the report kind into directory.

    Returns the list of written file paths (one entry today; the list keeps
    the CLI output stable if a kind ever grows a second panel).
    """
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    target = directory / f"report_{report.kind}.png"
    if report.kind == "triangle":
        _triangle_figure(report, target)
    elif report.kind == "quad":
        _quad_figure(report, target)
    else:
        _ngon_figure(report, target)
    return [target]
