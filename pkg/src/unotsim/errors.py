"""Exception types shared across the package."""


class UnotSimError(Exception):
    """Base class for all package errors."""


class ValidationError(UnotSimError, ValueError):
    """An input violates a structural contract (norm, shape, hermiticity, ...)."""


class CapacityError(UnotSimError, ValueError):
    """A request exceeds a documented desk-scale bound."""


class UnsupportedCaseError(UnotSimError, ValueError):
    """The operation is deliberately not defined for these inputs."""
