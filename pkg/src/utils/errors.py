"""Exception hierarchy. Every failure carries a message naming the offending value."""


class ReggeScatError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 3


class ConfigError(ReggeScatError):
    exit_code = 2


class DomainError(ReggeScatError, ValueError):
    """Argument outside the working range of an operation."""


class GammaPoleError(DomainError):
    pass


class ConvergenceError(ReggeScatError):
    pass


class SeedRadiusError(ReggeScatError):
    pass


class TailToleranceError(ReggeScatError):
    pass


class IntegrationError(ReggeScatError):
    pass


class BranchTrackingError(ReggeScatError):
    pass


class PreconditionError(ReggeScatError):
    pass


class ContourError(ReggeScatError):
    pass


class HypothesisError(ReggeScatError, ValueError):
    pass
