"""Exception types shared across the package."""


class SketchFaceError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(SketchFaceError, ValueError):
    """A spec, config file, or hyperparameter value is invalid."""


class ValidationError(SketchFaceError, ValueError):
    """Input data violates a documented invariant."""


class ShapeError(ValidationError):
    """Array shape is incompatible with the requested operation."""


class TrainingAborted(SketchFaceError, RuntimeError):
    """Training hit a non-finite loss; carries the offending step."""

    def __init__(self, step, message):
        super().__init__(message)
        self.step = step
