"""Exception types raised by the geometry and construction pipeline."""


class GeometryError(ValueError):
    """Base class for all sconvex errors."""


class DegeneratePair(GeometryError):
    """Two points coincide or are antipodal where a unique great circle is needed."""


class CoincidentCircles(GeometryError):
    """Circle intersection requested for identical circles (infinite solution set)."""


class OutOfDomain(GeometryError):
    """Closed-form bound evaluated outside its valid parameter range."""


class OutsideHemisphere(GeometryError):
    """Point not strictly inside the open hemisphere of a projection center."""


class NoCommonHemisphere(GeometryError):
    """Input points do not fit strictly inside one open hemisphere."""


class DegenerateInput(GeometryError):
    """Input too degenerate to define the requested object (e.g. collinear hull input)."""


class NotOnBoundary(GeometryError):
    """Query point is not on the body's boundary within tolerance."""


class InvalidBody(GeometryError):
    """Segment chain does not form a valid boundary (open chain, bad arc, ...)."""


class InvalidLune(GeometryError):
    """Hemisphere poles coincident or antipodal; no lune is defined."""


class NotSupporting(GeometryError):
    """Hemisphere does not support the body (body sticks out, or no touch point)."""


class WidthOutOfRegime(GeometryError):
    """Computed width reached pi/2; outside the regime the machinery is valid for."""


class ThicknessOutOfRegime(GeometryError):
    """Body thickness reached pi/2; outside the supported regime."""


class NotConstantWidthPoint(GeometryError):
    """Boundary point lies on an arm, not on a constant-width portion."""


class RadiusOutOfRange(GeometryError):
    """Generator radius parameter outside its allowed interval."""


class EvenN(GeometryError):
    """Reuleaux polygon generator requires an odd vertex count."""


class WidthOutOfRange(GeometryError):
    """Generator width parameter outside (0, pi/2)."""


class DecompositionFailed(GeometryError):
    """Boundary runs could not be paired into opposite constant-width curves."""


class EpsOutOfRange(GeometryError):
    """Approximation tolerance outside its allowed interval."""


class RefinementDiverged(GeometryError):
    """Chord refinement did not terminate; input pair is malformed."""


class ScaffoldFailed(GeometryError):
    """A required circle intersection for an apex point does not exist."""


class ConvexityLost(GeometryError):
    """A replacement splice produced a non-convex chain."""


class CertificateFailed(GeometryError):
    """Certified Hausdorff bound exceeded eps or a containment sample failed."""
