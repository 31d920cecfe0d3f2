"""Exception hierarchy shared by every module."""


class LabError(Exception):
    """Base class for all errors raised by schattenlab."""


class ParameterError(LabError, ValueError):
    """A numeric parameter is outside its admissible range."""


class EmptyWindowError(ParameterError):
    """The requested truncation window contains no dual points."""


class ConfigurationError(LabError, ValueError):
    """Invalid grid, window or run configuration."""


class AliasingError(ConfigurationError):
    """Quadrature grid is too coarse for the band limit involved."""


class UnsupportedGroupError(LabError, NotImplementedError):
    """Operation is only realized on a different group."""


class UndefinedFitError(LabError, ValueError):
    """A regression has no usable data (for instance an all-zero symbol)."""


class InsufficientDataError(LabError, ValueError):
    """Too few windows to decide convergence."""


class ContractError(LabError, ValueError):
    """Caller broke a documented precondition (e.g. non-invariant symbol)."""


class ShapeError(LabError, ValueError):
    """Matrix-valued rule returned the wrong block size."""


class NumericError(LabError, ArithmeticError):
    """Non-finite numbers where finite ones are required."""
