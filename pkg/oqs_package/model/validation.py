# oqs_package/model/validation.py

from dataclasses import dataclass
import logging
import numpy as np

from .spectral import spectral_values
from .system import SystemModel, eigenbasis, hermiticity_residual
from ..utils.config_helper import get_kms_sample_frequencies
from ..utils.error_helper import handle_errors

logger = logging.getLogger(__name__)

# relative KMS residual accepted by the check (floating-point rounding only)
KMS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""

    def to_report(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> CheckResult:
        return next(check for check in self.checks if check.name == name)

    def to_report(self) -> dict:
        return {"passed": self.passed, "checks": [check.to_report() for check in self.checks]}


def _failure(name):
    def failed(error, *args, **kwargs):
        return CheckResult(name=name, passed=False, residual=float("inf"), tolerance=0.0, detail=str(error))

    return failed


@handle_errors(default_return=_failure("hermiticity_hamiltonian"))
def check_hamiltonian_hermiticity(model: SystemModel) -> CheckResult:
    residual = hermiticity_residual(model.hamiltonian)
    tolerance = model.hermiticity_epsilon(model.hamiltonian)
    return CheckResult("hermiticity_hamiltonian", residual <= tolerance, residual, tolerance)


@handle_errors(default_return=_failure("hermiticity_coupling"))
def check_coupling_hermiticity(model: SystemModel) -> CheckResult:
    residual = hermiticity_residual(model.coupling_operator)
    tolerance = model.hermiticity_epsilon(model.coupling_operator)
    return CheckResult("hermiticity_coupling", residual <= tolerance, residual, tolerance)


@handle_errors(default_return=_failure("non_degeneracy"))
def check_non_degeneracy(model: SystemModel) -> CheckResult:
    eig = eigenbasis(model)
    frequencies = eig.frequencies
    if frequencies.shape[0] < 2:
        return CheckResult("non_degeneracy", True, float("inf"), 0.0, "single level")
    tolerance = model.degeneracy_tolerance * float(frequencies[-1] - frequencies[0])
    min_gap = float(np.min(np.diff(frequencies)))
    # residual is the smallest gap; the check passes when it exceeds the tolerance
    return CheckResult("non_degeneracy", min_gap > tolerance, min_gap, tolerance)


def sample_frequencies(model: SystemModel) -> np.ndarray:
    """
    Positive frequencies at which validation evaluates G: the configured sample
    (scaled by T) plus every non-zero |Bohr frequency| of the Hamiltonian, restricted
    to the covered interval for a tabulated reservoir that refuses to extrapolate.
    """
    samples = [float(w) * model.temperature for w in get_kms_sample_frequencies()]
    levels = np.linalg.eigvalsh(np.asarray(model.hamiltonian))
    bohr = np.abs(levels[:, None] - levels[None, :]).ravel()
    samples.extend(float(w) for w in bohr if w > 0)
    samples = np.unique(np.array(samples, dtype=float))
    return _inside_table(model, samples)


def _inside_table(model: SystemModel, omega: np.ndarray) -> np.ndarray:
    # a strict table is only evaluated on the interval it covers
    bounds = model.reservoir.table_range()
    if bounds is None or model.reservoir.extrapolation != "error":
        return omega
    lo, hi = bounds
    return omega[(omega >= lo) & (omega <= hi)]


@handle_errors(default_return=_failure("kms"))
def check_kms(model: SystemModel) -> CheckResult:
    """
    Checks G(w) = exp(w/T) G(-w) on sample frequencies, and compares any tabulated
    negative-frequency samples with the KMS completion of the stored half-line.
    """
    temperature = model.temperature
    reservoir = model.reservoir
    omega = sample_frequencies(model)
    residual = 0.0
    if omega.size:
        forward = spectral_values(reservoir, temperature, omega)
        backward = spectral_values(reservoir, temperature, -omega)
        scale = np.maximum(np.abs(forward), np.finfo(float).tiny)
        residual = float(np.max(np.abs(forward - np.exp(omega / temperature) * backward) / scale))
    detail = f"{omega.size} sampled frequencies"
    reference = np.zeros(0)
    if reservoir.reference_omega is not None:
        reference = np.asarray(reservoir.reference_omega)
        stored = np.asarray(reservoir.reference_values)
        covered = np.isin(-reference, _inside_table(model, -reference))
        reference, stored = reference[covered], stored[covered]
    if reference.size:
        completed = spectral_values(reservoir, temperature, reference)
        scale = np.maximum(np.abs(completed), np.abs(stored))
        scale = np.maximum(scale, np.finfo(float).tiny)
        table_residual = float(np.max(np.abs(completed - stored) / scale))
        residual = max(residual, table_residual)
        detail += f", {reference.size} tabulated negative-frequency samples (max relative residual {table_residual:.3e})"
    return CheckResult("kms", residual <= KMS_TOLERANCE, residual, KMS_TOLERANCE, detail)


@handle_errors(default_return=_failure("positivity"))
def check_positivity(model: SystemModel) -> CheckResult:
    omega = sample_frequencies(model)
    omega = np.concatenate([omega, -omega, _inside_table(model, np.zeros(1))])
    if omega.size == 0:
        return CheckResult("positivity", True, 0.0, 0.0, "no sampled frequency inside the table")
    values = spectral_values(model.reservoir, model.temperature, omega)
    worst = float(np.min(values))
    return CheckResult("positivity", worst >= 0.0, worst, 0.0, "minimum sampled G")


def validate(model: SystemModel) -> ValidationReport:
    """
    Runs every standing-assumption check on a model and collects the results.

    Args:
        model (SystemModel): The model.

    Returns:
        ValidationReport: One CheckResult per check; failures never raise.
    """
    report = ValidationReport(
        checks=(
            check_hamiltonian_hermiticity(model),
            check_coupling_hermiticity(model),
            check_non_degeneracy(model),
            check_kms(model),
            check_positivity(model),
        )
    )
    for failure in report.failures():
        logger.warning("Validation check '%s' failed: residual %s (%s)", failure.name, failure.residual, failure.detail)
    return report
