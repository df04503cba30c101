"""Exception hierarchy.

Every error raised by the library derives from PlaneTreeError so callers (in
particular the CLI) can map failures to exit codes without enumerating causes.
"""


class PlaneTreeError(Exception):
    """Base class for all library errors."""


class SequenceFormatError(PlaneTreeError):
    """Malformed child-sequence or tree text."""


class EmptyInputError(PlaneTreeError):
    """A child sequence must have at least one entry."""


class NegativeEntryError(PlaneTreeError):
    """Child counts must be non-negative."""


class SumMismatchError(PlaneTreeError):
    """A length-n child sequence must sum to n - 1."""


class DegenerateSequenceError(PlaneTreeError):
    """Operation undefined for a permutation of (1, ..., 1, 0)."""


class NotTreeSequenceError(PlaneTreeError):
    """Decoding requires the running child-count surplus to stay non-negative."""


class CapExceededError(PlaneTreeError):
    """Enumeration would produce more trees than the configured cap."""


class PlanLengthMismatchError(PlaneTreeError):
    """A subdivision plan must supply one slot per node of the reduced tree."""


class UnaryNodeInReducedError(PlaneTreeError):
    """Subdivision targets must not already contain one-child nodes."""


class PurePathError(PlaneTreeError):
    """Reducing a path tree would leave fewer than two nodes."""


class ZeroNormSqError(PlaneTreeError):
    """Bound undefined when the squared norm of the sequence is zero."""


class NonPositiveVarianceError(PlaneTreeError):
    """Concentration bounds require a positive variance proxy."""
