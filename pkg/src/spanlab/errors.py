"""Exception types shared across the package."""


class SpanlabError(Exception):
    """Base class for all package errors."""


class ParseError(SpanlabError):
    """Malformed input file or generator spec."""


class DuplicatePoint(SpanlabError):
    """Two points at distance zero."""


class SymmetryViolation(SpanlabError):
    """Explicit matrix is not symmetric."""


class TriangleViolation(SpanlabError):
    """Explicit matrix violates the triangle inequality."""


class SizeLimitExceeded(SpanlabError):
    """Input larger than the configured cap for an exact oracle."""


class DisconnectedInput(SpanlabError):
    """Graph operation that requires connectivity got a disconnected graph."""


class NotATree(SpanlabError):
    """Expected a spanning tree."""


class UnsupportedMetric(SpanlabError):
    """Back-end cannot handle this metric kind."""


class LabelConflict(SpanlabError):
    """A bag would carry two mutually exclusive labels."""


class AdoptionByParent(SpanlabError):
    """A scheduled join targets the bag's own forest parent."""


class EmptyKernel(SpanlabError):
    """A non-empty bag ended up with an empty kernel."""


class InvariantViolation(SpanlabError):
    """A structural invariant failed; message carries the witness."""
