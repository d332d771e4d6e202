"""Polygons as orthonormal frame pairs.

A closed planar polygon of perimeter 2 is the entrywise square of
z = x + i*y for an orthonormal pair (x, y); a closed spatial polygon is the
entrywise Hopf image of a Hermitian-orthonormal complex pair. This package
samples such polygons Haar-uniformly, classifies and relabels them, morphs
one into another along frame paths, and reproduces the ensemble statistics
that follow from the measure (obtuse-triangle probability, quadrilateral
class split, diameter scaling).
"""

from .errors import (
    AntipodalPair,
    Degenerate,
    DegeneratePair,
    DegeneratePlanes,
    DegenerateProjection,
    FrameInvalid,
    IoFailure,
    NotClosed,
    NotNormalized,
    OnBoundary,
    PolyframeError,
    SamplingFailure,
    SectionSingular,
    TooLarge,
    ZeroEdge,
)
from .linalg import (
    Svd2Result,
    direct_rotation,
    gram_schmidt_pair,
    inner,
    qr_sign_corrected,
    svd_2x2,
)
from .planar import (
    PlanarPolygon,
    QuadClass,
    StiefelFrame,
    TriangleClass,
    classify_quadrilateral,
    classify_triangle,
    convexify,
    cyclic_relabel,
    frame_to_polygon,
    polygon_to_frame,
    principal_sqrt,
    winding_number,
)
from .spatial import (
    HermitianFrame,
    Quaternion,
    SpacePolygon,
    apply_framing,
    frame_to_space_polygon,
    hopf_map,
    hopf_section,
    rotate_polygon,
    space_polygon_to_frame,
    twisted_framing,
)
from .paths import (
    MorphPath,
    PrincipalAngles,
    best_lift_morph,
    grassmann_align,
    grassmann_geodesic,
    lift_variants,
    path_length,
    stiefel_path,
)
from .sampling import (
    EnsembleReport,
    SeededRng,
    ensemble_report,
    random_rotation_matrix,
    sample_convex_polygon,
    sample_polygon,
    sample_space_polygon,
    sample_stiefel,
    sample_stiefel_complex,
)
from .documents import PolygonDocument, dumps, dumps_many, parse
from .render import (
    DEFAULT_PALETTE,
    TilingSpec,
    emit_svg,
    emit_tiling,
    export_space_polygon,
    tiling_copies,
)

__version__ = "0.1.0"
