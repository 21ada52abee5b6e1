"""Exception types shared across the package."""


class LrckitError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameter(LrckitError, ValueError):
    """Arguments violate a documented precondition."""


class DuplicateNode(InvalidParameter):
    """Interpolation nodes are not pairwise distinct."""


class FieldTooSmall(InvalidParameter):
    """The field cannot host the requested evaluation points."""


class NotRegular(InvalidParameter):
    """The design is not point-regular, but regularity is required."""


class NotAdmissible(LrckitError):
    """Erasure pattern fails the structured-decoder admissibility test."""


class Inconsistent(LrckitError):
    """Surviving symbols are not consistent with any codeword."""


class NotSeparable(InvalidParameter):
    """Polynomial has repeated roots where distinct roots are required."""


class Infeasible(LrckitError):
    """Exhaustive search would exceed the configured work guard."""


class InternalInvariantViolation(LrckitError):
    """A structural invariant that should be unbreakable was broken."""
