"""Exception hierarchy shared across the package."""


class SalimitsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SalimitsError, ValueError):
    """An input coordinate lies outside the map's domain, or an operation
    was handed a degenerate input (e.g. the critical point where a branch
    point is required)."""


class LimitError(SalimitsError):
    """A configured engineering cap (max_period, max_depth, ...) was hit."""


class AnalysisError(SalimitsError):
    """The requested analysis could not be completed: classification at some
    tower level is undecidable at working precision, or the partition
    machinery's preconditions fail for this map.

    Carries optional ``diagnostics`` (a dict) and, for tower failures,
    ``partial`` (the tower built so far)."""

    def __init__(self, message, diagnostics=None, partial=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
        self.partial = partial


class EscapeError(AnalysisError):
    """A forward orbit left the itinerary cells: the point is not in the node.

    ``step`` is the first iterate index that escaped."""

    def __init__(self, message, step, point=None):
        super().__init__(message, diagnostics={"step": step, "point": point})
        self.step = step
        self.point = point


class InadmissibleWordError(AnalysisError):
    """A symbol word is not realized by the partition (empty cylinder)."""


class NoDenseOrbitError(AnalysisError):
    """The subshift is reducible: no backward-dense tail exists."""
