"""Exception types shared across the package.

The CLI maps these onto exit codes (parameter problems -> 2, solver
failures -> 3), so modules should raise the most specific type that fits.
"""


class SpeedcoverError(Exception):
    """Base class for all package errors."""


class ParameterError(SpeedcoverError, ValueError):
    """An argument is outside its documented range or otherwise unusable."""


class DimensionError(SpeedcoverError, ValueError):
    """Vector or matrix sizes do not line up."""


class SchemaError(SpeedcoverError, ValueError):
    """A persisted file does not match the expected schema."""


class ClosureInfeasibleError(SpeedcoverError):
    """Equality-mode interpolation target lies outside the sampled hull."""


class MpsFormatError(SpeedcoverError, ValueError):
    """Model export/import failed (bad names, malformed file)."""


class SolverError(SpeedcoverError, RuntimeError):
    """Internal solver failure (inconsistent incumbent, bad model)."""
