"""Exception types shared across the package."""


class DomainError(Exception):
    """Base class for physics/solver errors (CLI exit code 3)."""


class SingularDenominator(DomainError):
    """Mean-field closed form degenerates (denominator below the floor)."""


class EigendecompositionFailure(DomainError):
    """Eigenvalue iteration did not converge on the drift matrix."""


class UnstableSystem(DomainError):
    """Drift matrix has a non-negative real eigenvalue part."""


class NoConvergence(DomainError):
    """Time integration failed to reach the requested residual."""


class UnphysicalCovariance(DomainError):
    """Reduced covariance violates the physicality bounds beyond tolerance."""


class NoCrossing(DomainError):
    """Threshold search found no entanglement death/birth in the range."""


class UnknownPreset(DomainError):
    """Preset name is not one of the bundled figure presets."""


class ConfigParseError(Exception):
    """Malformed config file, unknown key, or bad value (CLI exit code 2)."""


class IllConditionedWarning(UserWarning):
    """Lyapunov system condition estimate exceeded the configured bound."""
