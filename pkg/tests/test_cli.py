import io
import json
import xml.etree.ElementTree as ET
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from polyframe import (
    PolygonDocument,
    SeededRng,
    classify_quadrilateral,
    dumps,
    parse,
    sample_polygon,
    sample_space_polygon,
)
from polyframe.planar import QuadClass
from polyframe.cli import run_cli

from conftest import regular_polygon

SVG_NS = "{http://www.w3.org/2000/svg}"


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run_cli([str(a) for a in args])
    return code, out.getvalue(), err.getvalue()


def write_planar(path, poly, **kw):
    path.write_text(dumps(PolygonDocument.from_planar(poly, **kw)) + "\n", encoding="utf-8")


def write_spatial(path, poly, **kw):
    path.write_text(dumps(PolygonDocument.from_spatial(poly, **kw)) + "\n", encoding="utf-8")


class TestSample:
    def test_single_planar(self):
        code, out, err = run("sample", "--n", 5, "--seed", 3)
        assert code == 0 and err == ""
        doc = parse(out)
        assert doc.kind == "planar" and doc.n == 5
        assert doc.seed == 3 and doc.sample_index is None

    def test_count_array(self):
        code, out, _ = run("sample", "--n", 4, "--count", 3)
        assert code == 0
        docs = parse(out)
        assert isinstance(docs, list) and len(docs) == 3
        assert [d.sample_index for d in docs] == [0, 1, 2]

    def test_spatial(self):
        code, out, _ = run("sample", "--n", 6, "--dim", 3, "--seed", 1)
        assert code == 0
        assert parse(out).kind == "spatial"

    def test_convex(self):
        code, out, _ = run("sample", "--n", 4, "--convex", "--seed", 2)
        assert code == 0
        assert classify_quadrilateral(parse(out).to_polygon()) is QuadClass.CONVEX

    def test_deterministic(self):
        a = run("sample", "--n", 7, "--seed", 9, "--count", 2)
        b = run("sample", "--n", 7, "--seed", 9, "--count", 2)
        assert a == b

    def test_out_file(self, tmp_path):
        dest = tmp_path / "p.json"
        code, out, _ = run("sample", "--n", 3, "--out", dest)
        assert code == 0 and out == ""
        assert parse(dest.read_text()).n == 3

    def test_bad_n(self):
        code, _, err = run("sample", "--n", 2)
        assert code == 2
        assert json.loads(err)["error"] == "ValueError"

    def test_convex_dim3(self):
        code, _, err = run("sample", "--n", 4, "--dim", 3, "--convex")
        assert code == 2

    def test_out_unwritable(self, tmp_path):
        code, _, err = run("sample", "--n", 3, "--out", tmp_path / "no" / "dir" / "p.json")
        assert code == 74
        assert json.loads(err)["error"] == "IoFailure"


class TestStats:
    def test_json_default(self):
        code, out, _ = run("stats", "--kind", "triangle", "--samples", 500, "--seed", 4)
        assert code == 0
        rep = json.loads(out)
        assert list(rep) == [
            "kind", "n", "samples", "seed", "obtuse_fraction", "convex_fraction",
            "reflex_fraction", "crossed_fraction", "mean_edge_length", "mean_diameter",
        ]
        assert rep["kind"] == "triangle" and rep["samples"] == 500
        assert 0.7 < rep["obtuse_fraction"] < 0.95
        assert rep["convex_fraction"] is None

    def test_quad_csv(self):
        code, out, _ = run("stats", "--kind", "quad", "--samples", 400, "--csv")
        assert code == 0
        header, vals = out.splitlines()
        assert header.startswith("kind,n,samples,seed,")
        cells = vals.split(",")
        assert cells[0] == "quad" and cells[4] == ""  # no obtuse fraction
        assert abs(sum(float(c) for c in cells[5:8]) - 1.0) < 1e-12

    def test_ngon_needs_n(self):
        code, _, err = run("stats", "--kind", "ngon", "--samples", 10)
        assert code == 2

    def test_figures_directory(self, tmp_path):
        fig = tmp_path / "figs"
        code, out, _ = run("stats", "--kind", "triangle", "--samples", 60,
                           "--figures", fig)
        assert code == 0
        png = fig / "report_triangle.png"
        assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert (fig / "report.json").read_text() == out

    def test_csv_json_exclusive(self):
        code, _, err = run("stats", "--kind", "quad", "--samples", 10, "--csv", "--json")
        assert code == 64


class TestMorph:
    def test_planar_frames(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_planar(a, sample_polygon(5, SeededRng(0)))
        write_planar(b, sample_polygon(5, SeededRng(1)))
        outdir = tmp_path / "frames"
        code, out, _ = run("morph", "--from", a, "--to", b, "--frames", 5,
                           "--out-dir", outdir)
        assert code == 0
        assert out == f"wrote 5 svg frames to {outdir}\n"
        files = sorted(f.name for f in outdir.iterdir())
        assert files == [f"frame_{k:04d}.svg" for k in range(5)]
        boxes = set()
        for f in outdir.iterdir():
            root = ET.fromstring(f.read_text())
            boxes.add(root.get("viewBox"))
        assert len(boxes) == 1  # steady camera across the sequence

    def test_geodesic_method_and_options(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_planar(a, sample_polygon(4, SeededRng(3)))
        write_planar(b, sample_polygon(4, SeededRng(4)))
        outdir = tmp_path / "g"
        code, _, _ = run("morph", "--from", a, "--to", b, "--frames", 3,
                         "--out-dir", outdir, "--method", "geodesic",
                         "--relabel", 1, "--signs", "0110")
        assert code == 0
        assert len(list(outdir.iterdir())) == 3

    def test_spatial_frames(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_spatial(a, sample_space_polygon(6, SeededRng(5)))
        write_spatial(b, sample_space_polygon(6, SeededRng(6)))
        outdir = tmp_path / "frames"
        code, out, _ = run("morph", "--from", a, "--to", b, "--frames", 4,
                           "--out-dir", outdir)
        assert code == 0 and "4 obj frames" in out
        first = (outdir / "frame_0000.obj").read_text()
        assert first.startswith("v ") and "\nl 1 2 3 4 5 6 1\n" in first

    def test_kind_mismatch(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_planar(a, sample_polygon(5, SeededRng(0)))
        write_spatial(b, sample_space_polygon(5, SeededRng(1)))
        code, _, err = run("morph", "--from", a, "--to", b, "--frames", 2,
                           "--out-dir", tmp_path / "x")
        assert code == 2 and "kind" in json.loads(err)["message"]

    def test_n_mismatch(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_planar(a, sample_polygon(5, SeededRng(0)))
        write_planar(b, sample_polygon(6, SeededRng(1)))
        code, _, _ = run("morph", "--from", a, "--to", b, "--frames", 2,
                         "--out-dir", tmp_path / "x")
        assert code == 2

    def test_frames_minimum(self, tmp_path):
        a = tmp_path / "a.json"
        write_planar(a, sample_polygon(5, SeededRng(0)))
        code, _, _ = run("morph", "--from", a, "--to", a, "--frames", 1,
                         "--out-dir", tmp_path / "x")
        assert code == 2


class TestTile:
    def test_square_patch(self, tmp_path):
        q = tmp_path / "q.json"
        write_planar(q, regular_polygon(4))
        dest = tmp_path / "t.svg"
        code, _, _ = run("tile", "--quad", q, "--rows", 2, "--cols", 2, "--out", dest)
        assert code == 0
        root = ET.fromstring(dest.read_text())
        assert len(root.findall(f"{SVG_NS}path")) == 8

    def test_deterministic(self, tmp_path):
        q = tmp_path / "q.json"
        write_planar(q, sample_polygon(4, SeededRng(0)))
        outs = []
        for name in ("a.svg", "b.svg"):
            dest = tmp_path / name
            code, _, _ = run("tile", "--quad", q, "--rows", 3, "--cols", 2, "--out", dest)
            assert code == 0
            outs.append(dest.read_bytes())
        assert outs[0] == outs[1]

    def test_rejects_triangle(self, tmp_path):
        q = tmp_path / "q.json"
        write_planar(q, regular_polygon(3))
        code, _, err = run("tile", "--quad", q, "--rows", 1, "--cols", 1,
                           "--out", tmp_path / "t.svg")
        assert code == 2


class TestLift:
    def test_default_signs(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(5, SeededRng(1)))
        dest = tmp_path / "l.json"
        code, _, _ = run("lift", "--in", p, "--out", dest)
        assert code == 0
        doc = parse(dest.read_text())
        assert np.array_equal(doc.signs, np.ones(5, dtype=np.int64))

    def test_explicit_signs(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(4, SeededRng(2)))
        dest = tmp_path / "l.json"
        code, _, _ = run("lift", "--in", p, "--signs", "01-+", "--out", dest)
        assert code == 0
        assert list(parse(dest.read_text()).signs) == [1, -1, -1, 1]

    def test_enumerate(self, tmp_path, pentagon_star_file):
        dest = tmp_path / "all.json"
        code, _, _ = run("lift", "--in", pentagon_star_file, "--enumerate", "--out", dest)
        assert code == 0
        docs = parse(dest.read_text())
        assert len(docs) == 32
        sign_set = {tuple(d.signs) for d in docs}
        assert len(sign_set) == 32

    def test_enumerate_cap(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(21, SeededRng(3)))
        code, _, err = run("lift", "--in", p, "--enumerate", "--out", tmp_path / "x.json")
        assert code == 2 and json.loads(err)["error"] == "TooLarge"

    def test_signs_and_enumerate_clash(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(4, SeededRng(0)))
        code, _, _ = run("lift", "--in", p, "--signs", "0000", "--enumerate",
                         "--out", tmp_path / "x.json")
        assert code == 64

    def test_spatial_theta(self, tmp_path):
        p = tmp_path / "p.json"
        write_spatial(p, sample_space_polygon(4, SeededRng(4)))
        tfile = tmp_path / "theta.json"
        tfile.write_text("[0.0, 0.5, 1.0, 1.5]")
        dest = tmp_path / "l.json"
        code, _, _ = run("lift", "--in", p, "--theta", tfile, "--out", dest)
        assert code == 0
        assert np.allclose(parse(dest.read_text()).theta, [0, 0.5, 1.0, 1.5])

    def test_theta_on_planar(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(4, SeededRng(0)))
        tfile = tmp_path / "theta.json"
        tfile.write_text("[0, 0, 0, 0]")
        code, _, _ = run("lift", "--in", p, "--theta", tfile, "--out", tmp_path / "x.json")
        assert code == 2

    def test_signs_on_spatial(self, tmp_path):
        p = tmp_path / "p.json"
        write_spatial(p, sample_space_polygon(4, SeededRng(1)))
        code, _, _ = run("lift", "--in", p, "--signs", "0000", "--out", tmp_path / "x.json")
        assert code == 2


class TestRender:
    def test_planar_svg(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(8, SeededRng(5)))
        dest = tmp_path / "p.svg"
        code, _, _ = run("render", "--in", p, "--out", dest)
        assert code == 0
        assert len(ET.fromstring(dest.read_text()).findall(f"{SVG_NS}path")) == 1

    @pytest.mark.parametrize("ext", ["obj", "csv"])
    def test_spatial_formats(self, tmp_path, ext):
        p = tmp_path / "p.json"
        write_spatial(p, sample_space_polygon(5, SeededRng(6)))
        dest = tmp_path / f"p.{ext}"
        code, _, _ = run("render", "--in", p, "--out", dest)
        assert code == 0 and dest.exists()

    def test_wrong_extension(self, tmp_path):
        p = tmp_path / "p.json"
        write_planar(p, sample_polygon(4, SeededRng(0)))
        code, _, _ = run("render", "--in", p, "--out", tmp_path / "p.obj")
        assert code == 2

    def test_corrupt_document(self, tmp_path):
        p = tmp_path / "p.json"
        p.write_text('{"version":1,"kind":"planar"')
        code, _, err = run("render", "--in", p, "--out", tmp_path / "p.svg")
        assert code == 2
        payload = json.loads(err)
        assert set(payload) == {"error", "message"}

    def test_missing_input(self, tmp_path):
        code, _, err = run("render", "--in", tmp_path / "nope.json",
                           "--out", tmp_path / "p.svg")
        assert code == 74


class TestUsageErrors:
    def test_unknown_flag(self):
        code, _, err = run("sample", "--n", 3, "--wat")
        assert code == 64 and "usage error" in err

    def test_missing_required(self):
        code, _, _ = run("sample")
        assert code == 64

    def test_unknown_subcommand(self):
        code, _, _ = run("polish")
        assert code == 64

    def test_no_arguments(self):
        code, _, _ = run()
        assert code == 64
