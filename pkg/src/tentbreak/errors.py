"""Exception hierarchy shared by every tentbreak module."""


class TentBreakError(Exception):
    """Base class for all errors raised by this package."""


class InvalidKey(TentBreakError, ValueError):
    """Key outside the chaotic domain (or sitting on the nonzero fixed point)."""


class DegenerateOrbit(TentBreakError):
    """The orbit hit exactly 0.0 and would stay there forever."""

    def __init__(self, step):
        super().__init__(f"orbit collapsed to 0.0 at step {step}")
        self.step = step


class LengthMismatch(TentBreakError, ValueError):
    pass


class KeystreamTooShort(TentBreakError, ValueError):
    pass


class OracleFailure(TentBreakError):
    pass


class NoConsistentKey(TentBreakError):
    """No (mu, x1) in the valid domain reproduces the observed bytes."""


class AmbiguousKey(TentBreakError):
    """More than one disjoint candidate survived the search."""

    def __init__(self, candidates):
        super().__init__(f"{len(candidates)} disjoint candidates survived")
        self.candidates = candidates


class SearchBudgetExceeded(TentBreakError):
    pass


class FormatError(TentBreakError, ValueError):
    pass


class DegenerateVariance(TentBreakError, ValueError):
    pass
