"""Exception hierarchy shared across the package."""


class NSKLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(NSKLabError, ValueError):
    """An input left the physically admissible domain (e.g. v <= 0)."""


class ModelViolationError(NSKLabError):
    """A coefficient model broke one of its structural requirements."""


class BracketError(NSKLabError):
    """A 1-D root solve found no sign change over the search interval."""


class ConvergenceError(NSKLabError):
    """An iterative solver failed to converge."""


class PositivityError(NSKLabError):
    """Specific volume or temperature became nonpositive during a run."""


class BlowUpError(NSKLabError):
    """Time stepping aborted after repeated step-size reductions."""


class ConfigError(NSKLabError, ValueError):
    """A run configuration failed to parse or validate."""
