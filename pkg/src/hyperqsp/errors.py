"""Exception hierarchy. Each family maps onto one CLI exit code."""


class HyperQSPError(Exception):
    exit_code = 1


class DomainError(HyperQSPError, ValueError):
    """Bad input: out-of-range angle, wrong parity, malformed file."""

    exit_code = 2


class DegenerateRotationError(DomainError):
    pass


class InfeasibleError(HyperQSPError):
    """The requested synthesis has no solution under the chosen conventions."""

    exit_code = 3


class NotCompletableError(InfeasibleError):
    pass


class FactorizationError(InfeasibleError):
    pass


class StrippingError(InfeasibleError):
    pass


class InvariantError(HyperQSPError):
    """A computed object violates an identity it must satisfy."""

    exit_code = 4
