"""Exception types shared across the library."""


class SlidecamError(Exception):
    """Base class for all library errors."""


class PolygonError(SlidecamError):
    """Invalid polygon input."""


class NonOrthogonalEdge(PolygonError):
    pass


class SelfIntersection(PolygonError):
    pass


class HoleOutsideOuter(PolygonError):
    pass


class DegenerateRing(PolygonError):
    pass


class Infeasible(SlidecamError):
    """The requested crosses cannot all be hit by the allowed guards."""


class CapExceeded(SlidecamError):
    """No cover of the requested size cap exists."""


class TooLargeForOracle(SlidecamError):
    """Instance too large for the exhaustive solver."""


class BudgetInsufficient(SlidecamError):
    """Net sampling kept failing verification at the configured size budget."""


class WidthExceeded(SlidecamError):
    """Tree decomposition is wider than the configured limit."""


class NotPathSegmentation(SlidecamError):
    """Neither segmentation of the polygon has a path as its dual graph."""


class PreconditionViolated(SlidecamError):
    pass


class GenerationFailed(SlidecamError):
    """A random generator ran out of retries."""
