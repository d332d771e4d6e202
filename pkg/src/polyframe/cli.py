"""Command-line interface.

Subcommands: sample, stats, morph, tile, lift, render. Every run with the
same arguments produces byte-identical files and stdout. Exit codes: 0 on
success, 2 on validation errors (one machine-readable JSON line on stderr),
64 on usage errors, 74 on input/output failures.
"""

import argparse
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from .documents import PolygonDocument, dumps, dumps_many, parse
from .errors import IoFailure, PolyframeError, TooLarge
from .paths import grassmann_geodesic, stiefel_path
from .planar import cyclic_relabel, frame_to_polygon, polygon_to_frame
from .render import TilingSpec, emit_svg, emit_tiling, export_space_polygon
from .sampling import (
    SeededRng,
    ensemble_report,
    sample_convex_polygon,
    sample_polygon,
    sample_space_polygon,
)
from .spatial import HermitianFrame, frame_to_space_polygon, space_polygon_to_frame


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="polyframe", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("sample", help="draw Haar-uniform polygons")
    p.add_argument("--n", type=int, required=True, help="number of edges")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p.add_argument("--convex", action="store_true",
                   help="reorder each planar sample into its convex polygon")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default="-", help="output file, - for stdout")

    p = sub.add_parser("stats", help="Monte Carlo ensemble report")
    p.add_argument("--kind", choices=("triangle", "quad", "ngon"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--figures", metavar="DIR",
                   help="also render PNG figure(s) plus a report copy into DIR")

    p = sub.add_parser("morph", help="interpolate between two polygons")
    p.add_argument("--from", dest="src", required=True, metavar="A.json")
    p.add_argument("--to", dest="dst", required=True, metavar="B.json")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.add_argument("--method", choices=("stiefel", "geodesic"), default="stiefel")
    p.add_argument("--relabel", type=int, default=0,
                   help="cyclically relabel the target's edges by K")
    p.add_argument("--signs", help="sign bits for the target's lift (0=+1, 1=-1)")

    p = sub.add_parser("tile", help="tile the plane with a quadrilateral")
    p.add_argument("--quad", required=True, metavar="Q.json")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--out", required=True, metavar="FILE.svg")

    p = sub.add_parser("lift", help="attach lift data to a polygon document")
    p.add_argument("--in", dest="inp", required=True, metavar="P.json")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--signs", help="sign bits (0=+1, 1=-1), planar only")
    grp.add_argument("--enumerate", action="store_true",
                     help="write all 2^n sign vectors, planar only")
    p.add_argument("--theta", metavar="FILE",
                   help="JSON array of framing angles, spatial only")
    p.add_argument("--out", required=True)

    p = sub.add_parser("render", help="draw a polygon document to a file")
    p.add_argument("--in", dest="inp", required=True, metavar="P.json")
    p.add_argument("--out", required=True,
                   help=".svg for planar; .obj or .csv for spatial")
    return parser


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _open_binary(path: str):
    try:
        return open(path, "wb")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _parse_single(path: str) -> PolygonDocument:
    doc = parse(_read_text(path))
    if isinstance(doc, list):
        raise ValueError(f"{path} holds an array; expected a single document")
    return doc


def _parse_signs(text: str, n: int) -> np.ndarray:
    table = {"0": 1, "+": 1, "1": -1, "-": -1}
    if len(text) != n or any(c not in table for c in text):
        raise ValueError("--signs needs one character from 01+- per edge")
    return np.array([table[c] for c in text], dtype=np.int64)


def _cmd_sample(ns) -> int:
    if ns.n < 3:
        raise ValueError("--n must be at least 3")
    if ns.count < 1:
        raise ValueError("--count must be positive")
    if ns.convex and ns.dim != 2:
        raise ValueError("--convex applies to --dim 2 only")
    rng = SeededRng(ns.seed)
    docs = []
    for i in range(ns.count):
        idx = i if ns.count > 1 else None
        if ns.dim == 2:
            draw = sample_convex_polygon if ns.convex else sample_polygon
            docs.append(PolygonDocument.from_planar(draw(ns.n, rng), seed=ns.seed,
                                                    sample_index=idx))
        else:
            docs.append(PolygonDocument.from_spatial(sample_space_polygon(ns.n, rng),
                                                     seed=ns.seed, sample_index=idx))
    text = dumps(docs[0]) if ns.count == 1 else dumps_many(docs)
    _write_text(ns.out, text + "\n")
    return 0


def _flt(x) -> str:
    return "null" if x is None else "%.17g" % x


def _report_rows(report):
    conv, refl, cross = report.class_fractions or (None, None, None)
    return [
        ("kind", report.kind, str),
        ("n", report.n, str),
        ("samples", report.sample_count, str),
        ("seed", report.seed, str),
        ("obtuse_fraction", report.obtuse_fraction, _flt),
        ("convex_fraction", conv, _flt),
        ("reflex_fraction", refl, _flt),
        ("crossed_fraction", cross, _flt),
        ("mean_edge_length", report.mean_edge_length, _flt),
        ("mean_diameter", report.mean_diameter, _flt),
    ]


def _report_json(report) -> str:
    parts = []
    for key, val, fmt in _report_rows(report):
        if fmt is str:
            rep = f'"{val}"' if isinstance(val, str) else str(val)
        else:
            rep = fmt(val)
        parts.append(f'"{key}":{rep}')
    return "{" + ",".join(parts) + "}\n"


def _report_csv(report) -> str:
    rows = _report_rows(report)
    header = ",".join(key for key, _, _ in rows)
    vals = ",".join(
        "" if val is None else (str(val) if fmt is str else fmt(val))
        for _, val, fmt in rows
    )
    return header + "\n" + vals + "\n"


def _cmd_stats(ns) -> int:
    report = ensemble_report(ns.kind, ns.samples, SeededRng(ns.seed), n=ns.n)
    text = _report_csv(report) if ns.csv else _report_json(report)
    sys.stdout.write(text)
    if ns.figures:
        from .figures import save_report_figure

        outdir = Path(ns.figures)
        try:
            outdir.mkdir(parents=True, exist_ok=True)
            save_report_figure(report, outdir)
            ext = "csv" if ns.csv else "json"
            (outdir / f"report.{ext}").write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
    return 0


def _roll_frame(frame, k: int):
    k = int(k) % frame.n
    if isinstance(frame, HermitianFrame):
        return HermitianFrame(np.roll(frame.x, -k), np.roll(frame.y, -k))
    return cyclic_relabel(frame, k)


def _cmd_morph(ns) -> int:
    if ns.frames < 2:
        raise ValueError("--frames must be at least 2")
    a = _parse_single(ns.src)
    b = _parse_single(ns.dst)
    if a.kind != b.kind:
        raise ValueError("both documents must share a kind")
    if a.n != b.n:
        raise ValueError("both polygons must have the same number of edges")
    if a.kind == "spatial" and ns.signs is not None:
        raise ValueError("--signs applies to planar documents only")
    f0 = a.to_frame()
    if ns.signs is not None:
        f1 = polygon_to_frame(b.to_polygon(), _parse_signs(ns.signs, b.n))
    else:
        f1 = b.to_frame()
    f1 = _roll_frame(f1, ns.relabel)
    path = stiefel_path(f0, f1) if ns.method == "stiefel" else grassmann_geodesic(f0, f1)

    out_dir = Path(ns.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    ts = [k / (ns.frames - 1) for k in range(ns.frames)]
    if a.kind == "planar":
        polys = [frame_to_polygon(path.eval(t)) for t in ts]
        allv = np.concatenate([p.vertices() for p in polys])
        span = max(float(np.ptp(allv.real)), float(np.ptp(-allv.imag)), 1e-6)
        pad = 0.05 * span
        box = (
            float(allv.real.min()) - pad,
            float((-allv.imag).min()) - pad,
            float(np.ptp(allv.real)) + 2 * pad,
            float(np.ptp(-allv.imag)) + 2 * pad,
        )
        for k, poly in enumerate(polys):
            with _open_binary(out_dir / f"frame_{k:04d}.svg") as fh:
                emit_svg([poly], fh, viewbox=box)
    else:
        for k, t in enumerate(ts):
            poly = frame_to_space_polygon(path.eval(t))
            with _open_binary(out_dir / f"frame_{k:04d}.obj") as fh:
                export_space_polygon(poly, "obj_polyline", fh)
    ext = "svg" if a.kind == "planar" else "obj"
    sys.stdout.write(f"wrote {ns.frames} {ext} frames to {out_dir}\n")
    return 0


def _cmd_tile(ns) -> int:
    doc = _parse_single(ns.quad)
    if doc.kind != "planar" or doc.n != 4:
        raise ValueError("--quad must be a planar document with 4 edges")
    spec = TilingSpec(quad=doc.to_polygon(), rows=ns.rows, cols=ns.cols)
    with _open_binary(ns.out) as fh:
        emit_tiling(spec, fh)
    return 0


def _cmd_lift(ns) -> int:
    doc = _parse_single(ns.inp)
    if doc.kind == "planar":
        if ns.theta is not None:
            raise ValueError("--theta applies to spatial documents only")
        p = doc.to_polygon()
        if ns.enumerate:
            if p.n > 20:
                raise TooLarge("2^n enumeration capped at n <= 20")
            out_docs = []
            for signs in itertools.product((1, -1), repeat=p.n):
                s = np.array(signs, dtype=np.int64)
                polygon_to_frame(p, s)  # validate the lift exists
                out_docs.append(PolygonDocument.from_planar(p, signs=s, seed=doc.seed))
            _write_text(ns.out, dumps_many(out_docs) + "\n")
            return 0
        signs = _parse_signs(ns.signs, p.n) if ns.signs else np.ones(p.n, dtype=np.int64)
        polygon_to_frame(p, signs)
        _write_text(ns.out, dumps(PolygonDocument.from_planar(p, signs=signs,
                                                              seed=doc.seed)) + "\n")
        return 0
    if ns.signs is not None or ns.enumerate:
        raise ValueError("--signs/--enumerate apply to planar documents only")
    p = doc.to_polygon()
    if ns.theta is not None:
        raw = json.loads(_read_text(ns.theta))
        if not (isinstance(raw, list) and len(raw) == p.n
                and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in raw)):
            raise ValueError("--theta file must hold a JSON array of n angles")
        theta = np.asarray(raw, dtype=np.float64)
    else:
        theta = np.zeros(p.n)
    space_polygon_to_frame(p, theta)  # validate (SectionSingular surfaces here)
    _write_text(ns.out, dumps(PolygonDocument.from_spatial(p, theta=theta,
                                                           seed=doc.seed)) + "\n")
    return 0


def _cmd_render(ns) -> int:
    doc = _parse_single(ns.inp)
    suffix = Path(ns.out).suffix.lower()
    if doc.kind == "planar":
        if suffix != ".svg":
            raise ValueError("planar documents render to .svg")
        with _open_binary(ns.out) as fh:
            emit_svg([doc.to_polygon()], fh)
        return 0
    if suffix == ".obj":
        fmt = "obj_polyline"
    elif suffix == ".csv":
        fmt = "csv_vertices"
    else:
        raise ValueError("spatial documents render to .obj or .csv")
    with _open_binary(ns.out) as fh:
        export_space_polygon(doc.to_polygon(), fmt, fh)
    return 0


_DISPATCH = {
    "sample": _cmd_sample,
    "stats": _cmd_stats,
    "morph": _cmd_morph,
    "tile": _cmd_tile,
    "lift": _cmd_lift,
    "render": _cmd_render,
}


def _error_line(exc) -> str:
    return json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"


def run_cli(argv) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 64
    try:
        return _DISPATCH[ns.cmd](ns)
    except IoFailure as exc:
        sys.stderr.write(_error_line(exc))
        return 74
    except (PolyframeError, ValueError, TypeError) as exc:
        sys.stderr.write(_error_line(exc))
        return 2


def main():
    sys.exit(run_cli(sys.argv[1:]))
