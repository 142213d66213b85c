# oqs_package/model/spectral.py
"""
Reservoir spectral functions G(omega).

Only the non-negative half-line is stored. Negative frequencies are always
obtained by KMS completion, G(-w) = exp(-w/T) G(w), so the KMS identity holds
for every family by construction.
"""

from dataclasses import dataclass, field
import logging
import numpy as np

from ..utils.data_helper import frozen_array
from ..utils.error_helper import ModelValidationError, SpectralRangeError

logger = logging.getLogger(__name__)

FAMILIES = ("flat-kms", "ohmic-thermal", "tabulated")
EXTRAPOLATION_RULES = ("error", "zero", "hold")


@dataclass(frozen=True, eq=False)
class SpectralFunction:
    """
    Fourier transform of the reservoir correlation function, stored on omega >= 0.

    Attributes:
        family: One of "flat-kms", "ohmic-thermal", "tabulated".
        g0: flat-kms value of G at omega -> 0+.
        eta: ohmic-thermal prefactor.
        cutoff: ohmic-thermal cutoff frequency.
        table_omega: tabulated sample frequencies (>= 0, strictly increasing).
        table_values: tabulated G samples (>= 0).
        extrapolation: tabulated rule beyond the last sample.
        reference_omega: tabulated samples supplied at negative frequency. They are
            never evaluated, only compared with the KMS completion by `validate`.
        reference_values: G values at `reference_omega`.
    """

    family: str
    g0: float | None = None
    eta: float | None = None
    cutoff: float | None = None
    table_omega: np.ndarray | None = field(default=None, repr=False)
    table_values: np.ndarray | None = field(default=None, repr=False)
    extrapolation: str = "error"
    reference_omega: np.ndarray | None = field(default=None, repr=False)
    reference_values: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ModelValidationError(
                f"Unknown reservoir family '{self.family}', expected one of {FAMILIES}"
            )
        if self.family == "flat-kms":
            _require_positive("g0", self.g0)
        elif self.family == "ohmic-thermal":
            _require_positive("eta", self.eta)
            _require_positive("cutoff", self.cutoff)
        else:
            self._check_table()

    def _check_table(self):
        if self.table_omega is None or self.table_values is None:
            raise ModelValidationError("Tabulated reservoir needs a non-empty table")
        omega = np.asarray(self.table_omega, dtype=float)
        values = np.asarray(self.table_values, dtype=float)
        if omega.ndim != 1 or omega.shape != values.shape or omega.size == 0:
            raise ModelValidationError("Malformed spectral table: frequencies and values must be equal-length lists")
        if not (np.all(np.isfinite(omega)) and np.all(np.isfinite(values))):
            raise ModelValidationError("Malformed spectral table: non-finite entries")
        if np.any(omega < 0):
            raise ModelValidationError("Malformed spectral table: stored frequencies must be >= 0")
        if np.any(np.diff(omega) <= 0):
            raise ModelValidationError("Malformed spectral table: frequencies must be strictly increasing")
        if np.any(values < 0):
            raise ModelValidationError("Malformed spectral table: G must be >= 0")
        if self.extrapolation not in EXTRAPOLATION_RULES:
            raise ModelValidationError(
                f"Unknown extrapolation rule '{self.extrapolation}', expected one of {EXTRAPOLATION_RULES}"
            )

    @classmethod
    def from_document(cls, document: dict) -> "SpectralFunction":
        """
        Builds a spectral function from the "reservoir" object of a model file.

        Args:
            document (dict): {"family": ..., family parameters}.

        Returns:
            SpectralFunction: The validated reservoir.
        """
        if not isinstance(document, dict) or "family" not in document:
            raise ModelValidationError("'reservoir' must be an object with a 'family' key")
        family = document["family"]
        if family == "flat-kms":
            return cls(family=family, g0=_as_float(document, "g0"))
        if family == "ohmic-thermal":
            return cls(
                family=family,
                eta=_as_float(document, "eta"),
                cutoff=_as_float(document, "cutoff"),
            )
        if family == "tabulated":
            table = document.get("table")
            if not isinstance(table, list) or len(table) == 0:
                raise ModelValidationError("Malformed spectral table: 'table' must be a non-empty list of [omega, G] pairs")
            try:
                pairs = np.array([[float(w), float(g)] for w, g in table], dtype=float)
            except (TypeError, ValueError) as e:
                raise ModelValidationError(f"Malformed spectral table: {e}") from e
            negative = pairs[:, 0] < 0
            if np.any(negative):
                logger.info(
                    "Tabulated reservoir carries %d negative-frequency samples; kept for KMS validation only",
                    int(np.sum(negative)),
                )
            return cls(
                family=family,
                table_omega=frozen_array(pairs[~negative, 0]),
                table_values=frozen_array(pairs[~negative, 1]),
                extrapolation=document.get("extrapolation", "error"),
                reference_omega=frozen_array(pairs[negative, 0]) if np.any(negative) else None,
                reference_values=frozen_array(pairs[negative, 1]) if np.any(negative) else None,
            )
        raise ModelValidationError(f"Unknown reservoir family '{family}', expected one of {FAMILIES}")

    def to_document(self) -> dict:
        if self.family == "flat-kms":
            return {"family": self.family, "g0": self.g0}
        if self.family == "ohmic-thermal":
            return {"family": self.family, "eta": self.eta, "cutoff": self.cutoff}
        table = [[float(w), float(g)] for w, g in zip(self.table_omega, self.table_values)]
        if self.reference_omega is not None:
            table = [
                [float(w), float(g)] for w, g in zip(self.reference_omega, self.reference_values)
            ] + table
        return {"family": self.family, "table": table, "extrapolation": self.extrapolation}

    def half_line(self, omega, temperature: float) -> np.ndarray:
        """
        Evaluates G on non-negative frequencies.

        Args:
            omega: Frequencies >= 0.
            temperature (float): Reservoir temperature.

        Returns:
            np.ndarray: G(omega).
        """
        omega = np.asarray(omega, dtype=float)
        if self.family == "flat-kms":
            return np.full_like(omega, self.g0)
        if self.family == "ohmic-thermal":
            # eta * w * exp(-w/wc) * (1 + n(w)); the w -> 0 limit is eta * T
            x = omega / temperature
            small = x < 1e-12
            safe_x = np.where(small, 1.0, x)
            thermal = np.where(small, temperature, omega / -np.expm1(-safe_x))
            return self.eta * thermal * np.exp(-omega / self.cutoff)
        return self._interpolate(omega)

    def _interpolate(self, omega: np.ndarray) -> np.ndarray:
        lo, hi = self.table_omega[0], self.table_omega[-1]
        outside = (omega < lo) | (omega > hi)
        if np.any(outside) and self.extrapolation == "error":
            bad = omega[outside]
            raise SpectralRangeError(
                f"Tabulated G queried at |omega| = {bad.flat[0]:.6g}, outside the table range [{lo:.6g}, {hi:.6g}]"
            )
        values = np.interp(omega, self.table_omega, self.table_values)
        if self.extrapolation == "zero":
            values = np.where(outside, 0.0, values)
        return values

    def table_range(self) -> tuple[float, float] | None:
        """Closed frequency interval covered by the table, or None for analytic families."""
        if self.family == "tabulated":
            return float(self.table_omega[0]), float(self.table_omega[-1])
        return None


def spectral_values(reservoir: SpectralFunction, temperature: float, omega) -> np.ndarray:
    """
    Evaluates G at arbitrary real frequencies using KMS completion for omega < 0.

    Args:
        reservoir (SpectralFunction): The reservoir.
        temperature (float): Temperature T > 0.
        omega: Real frequencies (any shape).

    Returns:
        np.ndarray: G(omega), same shape as omega.
    """
    omega = np.asarray(omega, dtype=float)
    magnitude = np.abs(omega)
    positive_branch = reservoir.half_line(magnitude, temperature)
    return np.where(omega < 0, np.exp(-magnitude / temperature) * positive_branch, positive_branch)


def spectral_value(reservoir: SpectralFunction, temperature: float, omega: float) -> float:
    """
    Evaluates G(omega); for omega < 0 returns exp(omega/T) * G(-omega).
    """
    if temperature <= 0:
        raise ModelValidationError(f"Temperature must be positive, got {temperature}")
    return float(spectral_values(reservoir, temperature, omega))


def _require_positive(name, value):
    if value is None or not np.isfinite(value) or value <= 0:
        raise ModelValidationError(f"Reservoir parameter '{name}' must be a positive real, got {value}")


def _as_float(document, key):
    if key not in document:
        raise ModelValidationError(f"Reservoir family '{document.get('family')}' needs parameter '{key}'")
    try:
        return float(document[key])
    except (TypeError, ValueError) as e:
        raise ModelValidationError(f"Reservoir parameter '{key}' is not a number") from e
