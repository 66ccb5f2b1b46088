"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class InvalidCurve(InvalidArgument):
    pass


class InvalidPoint(InvalidArgument):
    pass


class InvalidParameter(InvalidArgument):
    pass


class UnsupportedOrder(InvalidArgument):
    pass


class PreconditionViolation(InvalidArgument):
    pass


class NotFound(KeyError):
    pass


class Indeterminate(RuntimeError):
    """Numeric root search hit its precision ceiling with an unresolved candidate."""


class InternalError(RuntimeError):
    """A computed result contradicts a known classification; signals a bug."""
