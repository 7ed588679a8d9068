"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """Bad input: wrong shape, out-of-range parameter, malformed interval."""


class UnsupportedOperation(InvalidArgument):
    """A (family, mode, ...) combination that is declared out of scope."""


class RangeError(InvalidArgument):
    """Argument outside the numerically supported range of a function."""


class SizeLimitError(InvalidArgument):
    """Exact/enumerative method requested beyond its size budget."""


class DivergentDeformation(InvalidArgument):
    """Exponential deformation that makes the defining integral diverge."""

    def __init__(self, k):
        super().__init__(f"deformation t_{k} != 0 diverges on infinite support")
        self.k = k


class IntegrationFailure(RuntimeError):
    """Adaptive ODE integration stalled; carries the last good abscissa."""

    def __init__(self, message, last_good):
        super().__init__(f"{message} (last good abscissa {last_good:.6g})")
        self.last_good = last_good


class PoleDetected(IntegrationFailure):
    """Solution blew up before the requested span end."""


class InitializationFailure(RuntimeError):
    """Series-to-ODE handoff mismatch exceeded tolerance."""


class FactorizationFailure(RuntimeError):
    """Moment matrix is numerically singular; carries first failing size."""

    def __init__(self, size):
        super().__init__(f"moment matrix singular at leading size {size}")
        self.size = size


class AccuracyFailure(RuntimeError):
    """Refinement did not converge; carries the last two values."""

    def __init__(self, message, last_two):
        super().__init__(f"{message}; last two values {last_two}")
        self.last_two = last_two
