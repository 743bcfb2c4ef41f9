"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad shapes, indices, lengths)."""


class CapabilityError(RuntimeError):
    """A request the library deliberately refuses (size caps, unsupported
    diagram labelings, operations whose preconditions fail)."""


class NotVisibleError(CapabilityError):
    """Raised by operations that require a visible weight matrix."""


class UnsupportedDiagramError(CapabilityError):
    """Raised for Kac-diagram labelings outside the supported range."""
