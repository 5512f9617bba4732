"""Exception hierarchy shared by the library and the CLI."""


class GeoposError(Exception):
    """Base class for all library errors."""


class InvalidInputError(GeoposError, ValueError):
    """Bad parameters, malformed files, or precondition violations."""


class DisconnectedGraphError(GeoposError):
    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: vertex {v} unreachable from vertex {u}")
        self.pair = (u, v)


class BudgetExceededError(GeoposError):
    """Raised when an exhaustive computation would exceed its configured budget.

    ``lower`` and ``upper`` carry the best interval known for the optimum at the
    moment the search stopped (``None`` when no bound is meaningful), and
    ``best`` the best feasible witness found so far.
    """

    def __init__(self, message: str, *, reached: int, lower=None, upper=None, best=None):
        super().__init__(message)
        self.reached = reached
        self.lower = lower
        self.upper = upper
        self.best = best


class CertificationError(GeoposError):
    """A claimed inequality or witness failed verification where failure indicates a bug."""
