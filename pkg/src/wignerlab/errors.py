"""Exception types shared across the library."""


class WignerlabError(ValueError):
    """Base class for all library errors."""


class ConfigurationError(WignerlabError):
    """Invalid grid or experiment configuration."""


class ParameterError(WignerlabError):
    """Mismatched grids, eta parameters, or out-of-range arguments."""


class ValidationError(WignerlabError):
    """An object failed its mathematical validity checks."""


class NormalizationError(ValidationError):
    """A state or distribution does not carry the required mass/norm."""


class NotFreeError(ParameterError):
    """Symplectic matrix has a singular upper-right block."""
