"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A grid, problem, or experiment parameter violates its contract."""


class SingularResolvent(ArithmeticError):
    """lambda is (numerically) not in the resolvent set of the discretized operator."""


class CapExceeded(RuntimeError):
    """A dense-matrix path was requested above the configured size cap."""


class DegenerateProfile(ValueError):
    """A Green's column magnitude underflowed to zero where a log is required."""
