"""Exception types shared across the toolkit."""


class FramekitError(ValueError):
    """Base class for all toolkit errors."""


class DimensionError(FramekitError):
    """Shapes or ambient dimensions do not line up."""


class NumericError(FramekitError):
    """Non-finite data, or a numerical routine produced garbage."""


class DegenerateInputError(FramekitError):
    """Input is structurally degenerate (zero vector, empty span, ...)."""


class PreconditionError(FramekitError):
    """A documented operation precondition was violated by the caller."""


class GenerationError(RuntimeError):
    """A randomized instance generator failed to hit its target."""
