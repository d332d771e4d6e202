"""Exception types shared across the package.

Every error raised deliberately by library code derives from PolyframeError,
so callers (and the CLI) can catch one base class for validation failures.
"""


class PolyframeError(Exception):
    """Base class for all deliberate polyframe errors."""


class DegeneratePair(PolyframeError):
    """Vector pair cannot be orthonormalized (zero or parallel inputs)."""


class AntipodalPair(PolyframeError):
    """Direct rotation is undefined: endpoints are antipodal on the sphere."""


class NotClosed(PolyframeError):
    """Edge vectors do not sum to zero within tolerance."""


class NotNormalized(PolyframeError):
    """Perimeter is not 2 within tolerance."""


class ZeroEdge(PolyframeError):
    """An edge of zero (or numerically zero) length where one is not allowed."""


class Degenerate(PolyframeError):
    """Geometry too degenerate to process (collinear, zero area, and such)."""


class OnBoundary(PolyframeError):
    """Query point lies on the polygon boundary; winding number undefined."""


class SectionSingular(PolyframeError):
    """Edge direction at (or too near) the section's singular point."""


class FrameInvalid(PolyframeError):
    """Frame columns fail the orthonormality invariants."""


class DegeneratePlanes(PolyframeError):
    """Frame planes are orthogonal beyond recovery; no aligned geodesic."""


class DegenerateProjection(PolyframeError):
    """Path construction hit a point where the projected column vanishes."""


class TooLarge(PolyframeError):
    """Input size exceeds a hard enumeration or safety cap."""


class SamplingFailure(PolyframeError):
    """Repeated degenerate draws; the random source looks broken."""


class IoFailure(PolyframeError):
    """An output stream or file could not be written or read."""
