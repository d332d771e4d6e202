import numpy as np
import pytest

from polyframe import PlanarPolygon, SpacePolygon


def polygon_from_vertices(verts) -> PlanarPolygon:
    v = np.asarray(verts, dtype=np.complex128)
    return PlanarPolygon.normalized(np.roll(v, -1) - v)


def regular_polygon(n: int) -> PlanarPolygon:
    return PlanarPolygon((2.0 / n) * np.exp(2j * np.pi * np.arange(n) / n))


@pytest.fixture
def pentagon_star() -> PlanarPolygon:
    # the {5/2} star: visit every second vertex of a regular pentagon
    v = np.exp(2j * np.pi * 2 * np.arange(5) / 5)
    return polygon_from_vertices(v)


_A_VERTS = [
    (0.0, 0.0), (1.5, 4.0), (2.5, 4.0), (4.0, 0.0), (3.1, 0.0), (2.75, 1.0),
    (2.3, 1.0), (2.0, 1.35), (1.7, 1.0), (1.25, 1.0), (0.9, 0.0), (0.45, 0.2),
]

_Z_VERTS = [
    (0.0, 4.0), (3.8, 4.0), (4.0, 3.85), (4.0, 3.3), (1.8, 0.7), (4.0, 0.7),
    (4.0, 0.0), (0.2, 0.0), (0.0, 0.15), (0.0, 0.7), (2.2, 3.3), (0.0, 3.3),
]


@pytest.fixture
def letter_a() -> PlanarPolygon:
    return polygon_from_vertices([complex(x, y) for x, y in _A_VERTS])


@pytest.fixture
def letter_z() -> PlanarPolygon:
    return polygon_from_vertices([complex(x, y) for x, y in _Z_VERTS])


def torus_knot(p: int, q: int, n: int, big_r: float = 2.0, small_r: float = 0.7) -> SpacePolygon:
    t = 2.0 * np.pi * np.arange(n) / n
    ring = big_r + small_r * np.cos(q * t)
    verts = np.column_stack([ring * np.cos(p * t), ring * np.sin(p * t), small_r * np.sin(q * t)])
    return SpacePolygon.normalized(np.roll(verts, -1, axis=0) - verts)


@pytest.fixture
def pentagon_star_file(tmp_path, pentagon_star):
    from polyframe import PolygonDocument, dumps

    path = tmp_path / "star.json"
    path.write_text(dumps(PolygonDocument.from_planar(pentagon_star)) + "\n",
                    encoding="utf-8")
    return path
