"""Exception types shared across the package."""


class VotestabError(Exception):
    """Base class for all package errors."""


class DimensionError(VotestabError):
    """Vector or matrix shapes do not line up."""


class DomainError(VotestabError):
    """An input vector falls outside a target function's domain."""


class ConfigError(VotestabError):
    """A parameter is outside its legal range (k, t, grids, ...)."""


class SingularityError(VotestabError):
    """The noise level p = 0.5 makes the requested estimate undefined."""
