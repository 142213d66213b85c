# oqs_package/builtin_models/two_tls.py

from dataclasses import dataclass, field
import logging
import numpy as np

from ..model.spectral import SpectralFunction
from ..model.system import SystemModel, eigenbasis
from ..dynamics.rates import RateMatrix, rate_matrix
from ..utils.config_helper import (
    get_two_tls_defaults,
    get_noninteracting_overrides,
    get_figure1_initial_conditions,
)
from ..utils.error_helper import ModelValidationError
from .operators import two_tls_hamiltonian, two_tls_coupling

logger = logging.getLogger(__name__)

BUILTIN_NAMES = ("two-tls", "two-tls-noninteracting", "figure1")


@dataclass(frozen=True)
class TwoTlsSpec:
    """
    Two two-level systems with a common dephasing-type reservoir.

    Attributes:
        omega_1, omega_2: Transition frequencies.
        omega_r: Rabi interaction constant; zero switches the interaction off.
        a: Coupling asymmetry, S = sigma_1^z + a sigma_2^z.
        coupling_strength: lambda.
        temperature: T.
        reservoir: Reservoir document; a flat-kms g0 of None is fixed by `normalised_reservoir`.
    """

    omega_1: float
    omega_2: float
    omega_r: float
    a: float
    coupling_strength: float = 1.0
    temperature: float = 1.0
    reservoir: dict = field(default_factory=lambda: {"family": "flat-kms", "g0": None})

    def __post_init__(self):
        if self.omega_1 <= 0 or self.omega_2 <= 0:
            raise ModelValidationError(f"TLS frequencies must be positive, got {self.omega_1}, {self.omega_2}")
        if self.temperature <= 0:
            raise ModelValidationError(f"Temperature must be positive, got {self.temperature}")
        if self.coupling_strength < 0:
            raise ModelValidationError(f"Coupling strength must be non-negative, got {self.coupling_strength}")

    @property
    def interacting(self) -> bool:
        return self.omega_r != 0

    @property
    def detuning(self) -> float:
        return self.omega_1 - self.omega_2


@dataclass(frozen=True, eq=False)
class TwoTlsAnalytics:
    """
    Closed-form eigenstructure.

    Attributes:
        energies: E_1..E_4 indexed by psi label.
        mixing_angle: phi.
        eigenvectors: Columns psi_1..psi_4 on the product basis.
        eigenstate_labels: psi label of every ascending-energy eigenstate.
        coupling_in_psi_basis: S written on psi_1..psi_4.
    """

    energies: np.ndarray
    mixing_angle: float
    eigenvectors: np.ndarray
    eigenstate_labels: tuple[int, ...]
    coupling_in_psi_basis: np.ndarray

    def psi_index(self, label: int) -> int:
        """Ascending-energy index of psi_label."""
        return self.eigenstate_labels.index(label)

    def to_report(self) -> dict:
        return {
            "energies": self.energies.tolist(),
            "mixing_angle": self.mixing_angle,
            "eigenvectors": self.eigenvectors.T.tolist(),
            "eigenstate_labels": list(self.eigenstate_labels),
            "coupling_in_psi_basis": self.coupling_in_psi_basis.tolist(),
        }


def load_two_tls_spec(**overrides) -> TwoTlsSpec:
    """
    Builds a spec from the configured defaults.

    Args:
        **overrides: Any TwoTlsSpec field.

    Returns:
        TwoTlsSpec: The spec.
    """
    parameters = get_two_tls_defaults()
    parameters.update(overrides)
    return TwoTlsSpec(**parameters)


def builtin_spec(name: str) -> TwoTlsSpec:
    if name in ("two-tls", "figure1"):
        return load_two_tls_spec()
    if name == "two-tls-noninteracting":
        return load_two_tls_spec(**get_noninteracting_overrides())
    raise ValueError(f"Unknown builtin example '{name}', expected one of {BUILTIN_NAMES}")


def mixing_angle(spec: TwoTlsSpec) -> float:
    """
    phi = arctan((sqrt(dw^2/4 + Omega_R^2) - dw/2) / Omega_R), continued to Omega_R = 0.
    """
    detuning = spec.detuning
    root = np.hypot(detuning / 2, spec.omega_r)
    if spec.omega_r != 0:
        return float(np.arctan((root - detuning / 2) / spec.omega_r))
    if detuning > 0:
        return 0.0
    if detuning < 0:
        return float(np.pi / 2)
    raise ModelValidationError("omega_1 = omega_2 without interaction leaves psi_3 and psi_4 degenerate")


def two_tls_analytics(spec: TwoTlsSpec) -> TwoTlsAnalytics:
    """
    Eigenvalues, mixing angle and eigenvectors of the two-TLS Hamiltonian in closed form.

    Args:
        spec (TwoTlsSpec): The model parameters.

    Returns:
        TwoTlsAnalytics: The analytic record.
    """
    phi = mixing_angle(spec)
    mean = 0.5 * (spec.omega_1 + spec.omega_2)
    root = float(np.hypot(spec.detuning / 2, spec.omega_r))
    energies = np.array([spec.omega_1 + spec.omega_2, 0.0, mean + root, mean - root])

    c, s = np.cos(phi), np.sin(phi)
    vectors = np.zeros((4, 4))
    vectors[0, 0] = 1.0
    vectors[1, 1] = 1.0
    vectors[2:, 2] = (c, s)
    vectors[2:, 3] = (-s, c)

    one_minus_a = 1.0 - spec.a
    coupling = np.diag([1.0 + spec.a, -(1.0 + spec.a), one_minus_a * np.cos(2 * phi), -one_minus_a * np.cos(2 * phi)])
    coupling[2, 3] = coupling[3, 2] = -one_minus_a * np.sin(2 * phi)

    labels = tuple(int(label) + 1 for label in np.argsort(energies, kind="stable"))
    return TwoTlsAnalytics(
        energies=energies,
        mixing_angle=phi,
        eigenvectors=vectors,
        eigenstate_labels=labels,
        coupling_in_psi_basis=coupling,
    )


def normalised_reservoir(spec: TwoTlsSpec, analytics: TwoTlsAnalytics | None) -> SpectralFunction:
    """
    Reservoir of the spec. A flat-kms reservoir without g0 gets g0 = 1 / (lambda^2 |S_34|^2),
    which makes the psi_3 -> psi_4 rate exactly 1, or g0 = 1 when psi_3 and psi_4 do not mix.
    """
    document = dict(spec.reservoir)
    if document.get("family") == "flat-kms" and document.get("g0") is None:
        strength = 0.0
        if analytics is not None:
            strength = spec.coupling_strength**2 * abs(analytics.coupling_in_psi_basis[2, 3]) ** 2
        document["g0"] = 1.0 / strength if strength > 0 else 1.0
    return SpectralFunction.from_document(document)


def two_tls_model(spec: TwoTlsSpec, name: str | None = None) -> SystemModel:
    """
    Builds the 4x4 model on the product basis (|e1 e2>, |g1 g2>, |e1 g2>, |g1 e2>).

    Args:
        spec (TwoTlsSpec): The model parameters.
        name (str): Optional model name.

    Returns:
        SystemModel: Model whose eigenstates carry their psi labels.
    """
    labels = None
    analytics = None
    try:
        analytics = two_tls_analytics(spec)
        labels = analytics.eigenstate_labels
    except ModelValidationError:
        # degenerate parameters; eigenbasis() reports the collision
        logger.warning("Two-TLS parameters give a degenerate spectrum; no psi labels attached")
    return SystemModel(
        hamiltonian=two_tls_hamiltonian(spec.omega_1, spec.omega_2, spec.omega_r),
        coupling_operator=two_tls_coupling(spec.a),
        reservoir=normalised_reservoir(spec, analytics),
        temperature=spec.temperature,
        coupling_strength=spec.coupling_strength,
        eigenstate_labels=labels,
        name=name,
    )


def figure1_setup(spec: TwoTlsSpec | None = None) -> tuple[RateMatrix, list[tuple[float, float]]]:
    """
    The relaxation of the mixed block: rates between psi_3 and psi_4 and the initial populations.

    Returns:
        tuple: RateMatrix ordered (psi_3, psi_4) and the (p_3, p_4) initial conditions.
    """
    spec = spec or load_two_tls_spec()
    analytics = two_tls_analytics(spec)
    model = two_tls_model(spec, name="figure1")
    eig = eigenbasis(model)
    rates = rate_matrix(eig, model.reservoir, model.temperature, model.coupling_strength)
    block = rates.restrict([analytics.psi_index(3), analytics.psi_index(4)])
    conditions = [tuple(float(p) for p in pair) for pair in get_figure1_initial_conditions()]
    return block, conditions


def psi_populations(analytics: TwoTlsAnalytics, by_label: dict) -> list[float]:
    """Converts {psi label: population} into a vector over ascending-energy eigenstates."""
    return [float(by_label.get(label, 0.0)) for label in analytics.eigenstate_labels]
