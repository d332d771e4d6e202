"""The on-disk polygon document: versioned JSON, deterministic bytes.

A document stores one polygon's edge vectors plus optional lift data (sign
vector for planar, framing angles for spatial) and optional seed
provenance. Serialization fixes the key order and prints floats with %.17g,
which round-trips doubles exactly, so serialize -> parse -> serialize is
byte-identical. Parsing is strict: unknown keys, wrong component counts,
or edges failing the closure and normalization checks reject the document.
"""

import json
from dataclasses import dataclass

import numpy as np

from .planar import PlanarPolygon, StiefelFrame, polygon_to_frame
from .spatial import HermitianFrame, SpacePolygon, space_polygon_to_frame

VERSION = 1

_KEYS = ("version", "kind", "n", "edges", "signs", "theta", "seed", "sample_index")


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


@dataclass(frozen=True, eq=False, repr=False)
class PolygonDocument:
    """One polygon, ready to serialize. kind is "planar" or "spatial"."""

    kind: str
    edges: np.ndarray
    signs: np.ndarray | None = None
    theta: np.ndarray | None = None
    seed: int | None = None
    sample_index: int | None = None
    version: int = VERSION

    def __post_init__(self):
        if self.kind not in ("planar", "spatial"):
            raise ValueError("kind must be 'planar' or 'spatial'")
        width = 2 if self.kind == "planar" else 3
        e = np.asarray(self.edges, dtype=np.float64)
        if e.ndim != 2 or e.shape[1] != width or e.shape[0] < 3:
            raise ValueError(f"edges must be (n, {width}) with n >= 3")
        object.__setattr__(self, "edges", e)
        if self.signs is not None:
            if self.kind != "planar":
                raise ValueError("signs only apply to planar documents")
            s = np.asarray(self.signs, dtype=np.int64)
            if s.shape != (e.shape[0],) or not np.all(np.abs(s) == 1):
                raise ValueError("signs must be n values from {+1, -1}")
            object.__setattr__(self, "signs", s)
        if self.theta is not None:
            if self.kind != "spatial":
                raise ValueError("theta only applies to spatial documents")
            t = np.asarray(self.theta, dtype=np.float64)
            if t.shape != (e.shape[0],) or not np.all(np.isfinite(t)):
                raise ValueError("theta must be n finite angles")
            object.__setattr__(self, "theta", t)

    @property
    def n(self) -> int:
        return self.edges.shape[0]

    @classmethod
    def from_planar(cls, p: PlanarPolygon, signs=None, seed=None, sample_index=None):
        edges = np.column_stack([p.edges.real, p.edges.imag])
        return cls(kind="planar", edges=edges, signs=signs, seed=seed,
                   sample_index=sample_index)

    @classmethod
    def from_spatial(cls, p: SpacePolygon, theta=None, seed=None, sample_index=None):
        return cls(kind="spatial", edges=np.array(p.edges), theta=theta, seed=seed,
                   sample_index=sample_index)

    def to_polygon(self):
        """Validating conversion; raises NotClosed or NotNormalized on bad edges."""
        if self.kind == "planar":
            return PlanarPolygon(self.edges[:, 0] + 1j * self.edges[:, 1])
        return SpacePolygon(self.edges)

    def to_frame(self) -> StiefelFrame | HermitianFrame:
        """Lift using the stored signs or framing angles (defaults if absent)."""
        p = self.to_polygon()
        if self.kind == "planar":
            return polygon_to_frame(p, self.signs)
        return space_polygon_to_frame(p, self.theta)

    def __repr__(self):
        return f"PolygonDocument(kind={self.kind!r}, n={self.n})"


def dumps(doc: PolygonDocument) -> str:
    """One-line JSON with fixed key order and exact float formatting."""
    parts = [f'"version":{doc.version}', f'"kind":"{doc.kind}"', f'"n":{doc.n}']
    rows = ",".join("[" + ",".join(_fmt(c) for c in row) + "]" for row in doc.edges)
    parts.append(f'"edges":[{rows}]')
    if doc.signs is not None:
        parts.append('"signs":[' + ",".join(str(int(s)) for s in doc.signs) + "]")
    if doc.theta is not None:
        parts.append('"theta":[' + ",".join(_fmt(t) for t in doc.theta) + "]")
    if doc.seed is not None:
        parts.append(f'"seed":{int(doc.seed)}')
    if doc.sample_index is not None:
        parts.append(f'"sample_index":{int(doc.sample_index)}')
    return "{" + ",".join(parts) + "}"


def dumps_many(docs) -> str:
    """JSON array of documents, one per line."""
    inner = ",\n ".join(dumps(d) for d in docs)
    return "[\n " + inner + "\n]"


def _require(cond, msg: str):
    if not cond:
        raise ValueError(msg)


def _parse_one(obj) -> PolygonDocument:
    _require(isinstance(obj, dict), "document must be a JSON object")
    unknown = set(obj) - set(_KEYS)
    _require(not unknown, f"unknown keys: {sorted(unknown)}")
    _require(obj.get("version") == VERSION, "unsupported document version")
    kind = obj.get("kind")
    _require(kind in ("planar", "spatial"), "kind must be 'planar' or 'spatial'")
    edges = obj.get("edges")
    width = 2 if kind == "planar" else 3
    _require(isinstance(edges, list) and len(edges) >= 3, "edges must list at least 3 rows")
    _require(
        all(
            isinstance(r, list)
            and len(r) == width
            and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in r)
            for r in edges
        ),
        f"each edge needs {width} numeric components",
    )
    arr = np.asarray(edges, dtype=np.float64)
    _require(bool(np.all(np.isfinite(arr))), "edge components must be finite")
    n = obj.get("n")
    _require(n == len(edges), "n must match the edge count")
    signs = obj.get("signs")
    if signs is not None:
        _require(
            isinstance(signs, list) and len(signs) == n
            and all(isinstance(s, int) and s in (1, -1) for s in signs),
            "signs must be n integers from {+1, -1}",
        )
    theta = obj.get("theta")
    if theta is not None:
        _require(
            isinstance(theta, list) and len(theta) == n
            and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in theta),
            "theta must be n numbers",
        )
    for key in ("seed", "sample_index"):
        val = obj.get(key)
        _require(val is None or (isinstance(val, int) and not isinstance(val, bool)),
                 f"{key} must be an integer")
    doc = PolygonDocument(
        kind=kind,
        edges=arr,
        signs=None if signs is None else np.asarray(signs, dtype=np.int64),
        theta=None if theta is None else np.asarray(theta, dtype=np.float64),
        seed=obj.get("seed"),
        sample_index=obj.get("sample_index"),
    )
    doc.to_polygon()  # closure and normalization gate
    return doc


def parse(text: str):
    """Parse one document or an array of them (mirrors dumps/dumps_many).

    Returns a PolygonDocument, or a list when the top level is an array.
    Raises ValueError on schema violations, NotClosed/NotNormalized on
    geometric ones.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if isinstance(obj, list):
        return [_parse_one(o) for o in obj]
    return _parse_one(obj)
