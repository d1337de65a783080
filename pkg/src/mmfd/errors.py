"""Exception types raised across the package."""


class MmfdError(Exception):
    """Base class for all package errors."""


class InvalidOrderError(MmfdError):
    """Collocation order parameter m outside the supported range [1, 10]."""


class SingularSystemError(MmfdError):
    """A direct sparse factorization hit an exactly singular pivot."""

    def __init__(self, message, pivot_index=None):
        super().__init__(message)
        self.pivot_index = pivot_index


class TangledMeshError(MmfdError):
    """A mesh cell has nonpositive width / Jacobian."""

    def __init__(self, message, index=None, time=None):
        super().__init__(message)
        self.index = index
        self.time = time


class DegenerateMeshError(MmfdError):
    """A mass-matrix entry is nonpositive at a queried time."""

    def __init__(self, message, node=None, time=None):
        super().__init__(message)
        self.node = node
        self.time = time


class StepFailureError(MmfdError):
    """A time step could not be completed (singular stage system)."""

    def __init__(self, message, step_index=None, interval=None):
        super().__init__(message)
        self.step_index = step_index
        self.interval = interval


class DegenerateExtrapolationError(MmfdError):
    """Boundary extrapolation nodes coincide (x_1 too close to x_l)."""


class DegenerateDomainError(MmfdError):
    """A moving domain collapsed below the minimum admissible width."""
