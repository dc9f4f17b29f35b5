"""
Exception hierarchy for the pencil lab.
Every error raised by library code derives from PencilLabError.
"""


class PencilLabError(Exception):
    """Base class for all pencil lab errors."""


class DivisionByZeroError(PencilLabError, ZeroDivisionError):
    """Exact division by a zero scalar."""


class DimensionMismatchError(PencilLabError, ValueError):
    """Shapes or parameter lengths disagree."""


class InadmissibleError(PencilLabError, ValueError):
    """Illegal combination of structure tag, map, block kind, class or (r, s)."""


class SingularPencilError(PencilLabError):
    """An operation that needs a regular pencil received a singular one."""


class SingularTransformError(PencilLabError):
    """A congruence transform or conjugating matrix is not invertible."""


class NonCanonicalSpecError(PencilLabError):
    """A decomposition was requested for a spec that is not in canonical layout."""


class DecompositionError(PencilLabError):
    """Preconditions of a term merge are violated."""


class PlacementError(PencilLabError):
    """A named perturbation does not fit into its frame."""


class ZeroPolynomialError(PencilLabError, ValueError):
    """Root counting was asked for the zero polynomial."""


class ParseError(PencilLabError, ValueError):
    """Malformed scalar or eigenvalue text."""
