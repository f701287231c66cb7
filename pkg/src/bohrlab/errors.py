"""Exception types shared across the library."""


class BohrLabError(Exception):
    """Base class for all library-specific failures."""


class OutOfRange(BohrLabError, ValueError):
    """A parameter or evaluation point lies outside its admissible range."""


class NonContracting(BohrLabError):
    """No usable tail bound was found within the term cap.

    Signals an ill-posed series rule (e.g. evaluation at r >= 1) or a
    target tolerance below what the remainder argument can deliver.
    """


class NotAlternating(BohrLabError):
    """Series terms violated strict sign alternation or magnitude decrease."""


class NotConvex(BohrLabError):
    """Alternating-term magnitudes do not decrease convexly, so the
    midpoint remainder bound does not apply."""


class NoBracket(BohrLabError):
    """Q does not change sign over the initial interval (0, 1 - delta)."""


class SignAmbiguous(BohrLabError):
    """Sign certification failed at the smallest evaluation budget.

    Carries the best certified bracket found so far in ``result`` (a
    RootResult whose half_width exceeds the requested tolerance).
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class MismatchedVariant(BohrLabError, ValueError):
    """Theorem tag and class tag refer to different function families."""
