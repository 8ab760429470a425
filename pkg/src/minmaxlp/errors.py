"""Exception types shared across the package."""


class LPError(Exception):
    """Base class for all errors raised by this package."""


class LoadError(LPError):
    """A problem or solution file could not be parsed.

    The message names the offending field (e.g. ``A[0][1]``).
    """


class GeometryError(LPError):
    """A duality or incidence operation was applied outside its domain
    (zero point, plane through the origin, vertical plane)."""


class TransformError(LPError):
    """A translation or rotation precondition failed."""


class SolverError(LPError):
    """The min-max solver could not produce a certified result."""


class DimensionCapError(SolverError):
    """Problem dimension exceeds the exact backend's cap; use the
    subgradient backend instead."""


class ReductionError(LPError):
    """A pipeline stage received inputs violating its precondition."""
