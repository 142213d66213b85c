# oqs_package/utils/error_helper.py
import functools
import logging
from typing import Any, Callable


class ModelValidationError(ValueError):
    """Raised when a model document or model object breaks a model invariant."""


class DegenerateSpectrumError(ModelValidationError):
    """Raised when two Hamiltonian levels are closer than the degeneracy tolerance."""

    def __init__(self, levels, gap, tolerance):
        self.levels = tuple(levels)
        self.gap = gap
        self.tolerance = tolerance
        super().__init__(
            f"Degenerate spectrum: levels {self.levels[0]} and {self.levels[1]} (0-based) "
            f"are separated by {gap:.3e} <= {tolerance:.3e}"
        )


class SpectralRangeError(ValueError):
    """Raised when a tabulated spectral function is queried outside its table."""


class DensityStateError(ValueError):
    """Raised for density matrices that are not Hermitian, unit-trace or positive."""


class EnumerationLimitError(ValueError):
    """Raised when exhaustive enumeration is requested for too large a system."""


class IntegrationError(RuntimeError):
    """Raised when the population integrator fails."""


class KernelDimensionError(RuntimeError):
    """Raised when a block rate generator does not have a one-dimensional kernel."""


class NamedComError(ValueError):
    """Raised when a named constant of motion does not exist for the requested model."""


class UsageError(ValueError):
    """Raised for malformed command requests."""


def handle_errors(default_return: Any = None):
    """
    Decorator that logs any exception raised by the wrapped function and returns a default instead.

    Args:
        default_return: Value returned on failure. If callable it is called with the
            exception followed by the original arguments.
    """

    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:  # pylint: disable=broad-except
                logging.error("Error in %s: %s", func.__name__, str(e))
                if callable(default_return):
                    return default_return(e, *args, **kwargs)
                return default_return

        return wrapper

    return decorator
