"""Exception types shared across the package."""


class CdeError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(CdeError, ValueError):
    """An argument violates an operation's precondition."""


class UndefinedEstimateError(CdeError):
    """The requested estimate does not exist for this input (e.g. an empty sample)."""


class CapacityError(CdeError):
    """The request exceeds a hard enumeration or alphabet-size cap."""


class ConfigurationError(CdeError):
    """A configuration references unknown names or is internally inconsistent."""
