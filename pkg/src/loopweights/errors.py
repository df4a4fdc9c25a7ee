"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class LoopWeightsError(Exception):
    exit_code = 1


class ConfigurationError(LoopWeightsError, ValueError):
    """Unsupported family/rank, bad flags, unparseable input."""

    exit_code = 2


class ResourceError(LoopWeightsError, RuntimeError):
    """An enumeration exceeded its configured cap."""

    exit_code = 2


class DomainError(LoopWeightsError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 3


class SingularPointError(DomainError):
    """A point lies on an affine root hyperplane."""

    exit_code = 4


class WindowError(LoopWeightsError, RuntimeError):
    """Finite-window computation did not stabilize or the window is too small."""

    exit_code = 5
