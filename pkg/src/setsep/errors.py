"""Exception types shared across the package."""


class SetSepError(Exception):
    """Base class for all domain errors raised by this package."""


class IncompleteAssignmentError(SetSepError, ValueError):
    """A weight lookup referenced an element with no assigned weight."""


class EmptyUniverseError(SetSepError, ValueError):
    """A family constructor was asked for a ground set of size zero."""


class SizeLimitError(SetSepError, ValueError):
    """A brute-force solver was given an instance above its search limit."""


class ConstantsInfeasibleError(SetSepError, ValueError):
    """A reduction's capacity constant violates a required weight inequality."""


class InvalidSolutionError(SetSepError, ValueError):
    """A packing or matching handed to a validator is not feasible."""


class SeparationViolationError(SetSepError):
    """Bin contents contradict the distinct-weight guarantee (an assigner bug)."""


class EquivalenceFailureError(SetSepError):
    """The two brute-force oracles disagree on a reduced instance (a reduction bug)."""
