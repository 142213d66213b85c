# oqs_package/model/system.py

from dataclasses import dataclass, field
from pathlib import Path
import json
import logging
import numpy as np
import scipy.linalg

from .spectral import SpectralFunction
from ..utils.config_helper import get_hermiticity_tolerance, get_degeneracy_tolerance
from ..utils.data_helper import Matrix, Vector, frozen_array, decode_matrix, encode_matrix
from ..utils.error_helper import ModelValidationError, DegenerateSpectrumError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SystemModel:
    """
    An open quantum system: Hamiltonian, Hermitian coupling operator S, coupling
    strength lambda, reservoir spectral function and temperature (hbar = k_B = 1).

    Arrays are copied and made read-only on construction; every invariant is
    checked in `__post_init__`, so an existing SystemModel is always valid.
    """

    hamiltonian: Matrix
    coupling_operator: Matrix
    reservoir: SpectralFunction
    temperature: float
    coupling_strength: float = 1.0
    hermiticity_tolerance: float | None = None
    degeneracy_tolerance: float | None = None
    eigenstate_labels: tuple[int, ...] | None = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        hamiltonian = np.asarray(self.hamiltonian, dtype=complex)
        coupling = np.asarray(self.coupling_operator, dtype=complex)
        if hamiltonian.ndim != 2 or hamiltonian.shape[0] != hamiltonian.shape[1] or hamiltonian.shape[0] < 1:
            raise ModelValidationError(f"Hamiltonian must be a non-empty square matrix, got shape {hamiltonian.shape}")
        if coupling.shape != hamiltonian.shape:
            raise ModelValidationError(
                f"Dimension mismatch: Hamiltonian is {hamiltonian.shape}, coupling operator is {coupling.shape}"
            )
        object.__setattr__(self, "hamiltonian", frozen_array(hamiltonian))
        object.__setattr__(self, "coupling_operator", frozen_array(coupling))
        if self.hermiticity_tolerance is None:
            object.__setattr__(self, "hermiticity_tolerance", get_hermiticity_tolerance())
        if self.degeneracy_tolerance is None:
            object.__setattr__(self, "degeneracy_tolerance", get_degeneracy_tolerance())

        for label, matrix in (("Hamiltonian", hamiltonian), ("coupling operator", coupling)):
            residual = hermiticity_residual(matrix)
            if residual > self.hermiticity_epsilon(matrix):
                raise ModelValidationError(
                    f"{label} is not Hermitian: max |M - M^dagger| = {residual:.3e}"
                )
        if not np.isfinite(self.temperature) or self.temperature <= 0:
            raise ModelValidationError(f"Temperature must be positive, got {self.temperature}")
        if not np.isfinite(self.coupling_strength) or self.coupling_strength < 0:
            raise ModelValidationError(f"Coupling strength must be non-negative, got {self.coupling_strength}")
        if not isinstance(self.reservoir, SpectralFunction):
            raise ModelValidationError("Reservoir must be a SpectralFunction")
        if self.eigenstate_labels is not None:
            try:
                labels = tuple(_as_label(x) for x in self.eigenstate_labels)
            except (TypeError, ValueError, OverflowError) as e:
                raise ModelValidationError(f"eigenstate_labels must be integers: {e}") from e
            if len(labels) != self.dimension or len(set(labels)) != len(labels):
                raise ModelValidationError("eigenstate_labels must be N distinct integers")
            object.__setattr__(self, "eigenstate_labels", labels)

    @property
    def dimension(self) -> int:
        return self.hamiltonian.shape[0]

    def hermiticity_epsilon(self, matrix: Matrix) -> float:
        """Absolute Hermiticity tolerance for `matrix`: relative tolerance times its largest entry."""
        return self.hermiticity_tolerance * float(np.max(np.abs(matrix)))


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """
    The model re-expressed in the Hamiltonian eigenbasis.

    Attributes:
        frequencies: Eigenfrequencies, strictly increasing.
        basis_transform: Unitary U with eigenbasis coordinates = U @ input coordinates.
        coupling_in_eigenbasis: U S U^dagger, entries S_{k1 k2}.
        labels: Optional names of the eigenstates (ascending-energy order).
    """

    frequencies: Vector
    basis_transform: Matrix
    coupling_in_eigenbasis: Matrix
    labels: tuple[int, ...] | None = None

    @property
    def dimension(self) -> int:
        return self.frequencies.shape[0]

    def to_eigenbasis(self, matrix: Matrix) -> Matrix:
        u = self.basis_transform
        return u @ np.asarray(matrix, dtype=complex) @ u.conj().T

    def bohr_frequencies(self) -> np.ndarray:
        """Matrix of omega_j - omega_i, indexed [i, j]."""
        return self.frequencies[None, :] - self.frequencies[:, None]


def _as_label(value) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{value!r} is not an integer")
    return int(value)


def hermiticity_residual(matrix: Matrix) -> float:
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def load_model(source) -> SystemModel:
    """
    Loads and validates a model document.

    Args:
        source: A path to a JSON model file, a JSON string, or an already parsed dict.

    Returns:
        SystemModel: The validated model.
    """
    if isinstance(source, dict):
        document = source
    else:
        text = None
        if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
            path = Path(source)
            if not path.exists():
                raise FileNotFoundError(f"Model file not found: {path}")
            text = path.read_text(encoding="utf-8")
        else:
            text = source
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ModelValidationError(f"Model document is not valid JSON: {e}") from e

    if not isinstance(document, dict):
        raise ModelValidationError("Model document must be a JSON object")
    for key in ("hamiltonian", "coupling_operator", "temperature", "reservoir"):
        if key not in document:
            raise ModelValidationError(f"Model document is missing '{key}'")

    raw_h = document["hamiltonian"]
    if isinstance(raw_h, dict):
        if "diagonal" not in raw_h or not isinstance(raw_h["diagonal"], list) or len(raw_h["diagonal"]) == 0:
            raise ModelValidationError("'hamiltonian' object form needs a non-empty 'diagonal' list")
        try:
            hamiltonian = np.diag(np.array([float(x) for x in raw_h["diagonal"]], dtype=complex))
        except (TypeError, ValueError) as e:
            raise ModelValidationError(f"'hamiltonian.diagonal' must hold reals: {e}") from e
    else:
        hamiltonian = decode_matrix(raw_h, "hamiltonian")
    coupling = decode_matrix(document["coupling_operator"], "coupling_operator")

    tolerances = document.get("tolerances", {}) or {}
    if not isinstance(tolerances, dict):
        raise ModelValidationError("'tolerances' must be an object")
    try:
        temperature = float(document["temperature"])
        coupling_strength = float(document.get("coupling_strength", 1.0))
    except (TypeError, ValueError) as e:
        raise ModelValidationError(f"Temperature and coupling strength must be reals: {e}") from e
    try:
        tolerances = {key: None if value is None else float(value) for key, value in tolerances.items()}
    except (TypeError, ValueError) as e:
        raise ModelValidationError(f"'tolerances' values must be reals: {e}") from e
    for key, value in tolerances.items():
        if value is not None and not (np.isfinite(value) and value > 0):
            raise ModelValidationError(f"Tolerance '{key}' must be a positive real, got {value}")

    model = SystemModel(
        hamiltonian=hamiltonian,
        coupling_operator=coupling,
        reservoir=SpectralFunction.from_document(document["reservoir"]),
        temperature=temperature,
        coupling_strength=coupling_strength,
        hermiticity_tolerance=tolerances.get("hermiticity"),
        degeneracy_tolerance=tolerances.get("degeneracy"),
        eigenstate_labels=document.get("eigenstate_labels"),
        name=document.get("name"),
    )
    logger.info("Loaded model with N = %d, T = %g, lambda = %g", model.dimension, temperature, coupling_strength)
    return model


def dump_model(model: SystemModel) -> dict:
    """
    Encodes a model as a model document (the inverse of `load_model`).
    """
    hamiltonian = np.asarray(model.hamiltonian)
    off_diagonal = hamiltonian - np.diag(np.diag(hamiltonian))
    if np.all(off_diagonal == 0) and np.all(np.diag(hamiltonian).imag == 0):
        encoded_h = {"diagonal": [float(x) for x in np.diag(hamiltonian).real]}
    else:
        encoded_h = encode_matrix(hamiltonian)
    document = {
        "hamiltonian": encoded_h,
        "coupling_operator": encode_matrix(model.coupling_operator),
        "coupling_strength": float(model.coupling_strength),
        "temperature": float(model.temperature),
        "reservoir": model.reservoir.to_document(),
        "tolerances": {
            "hermiticity": model.hermiticity_tolerance,
            "degeneracy": model.degeneracy_tolerance,
        },
    }
    if model.eigenstate_labels is not None:
        document["eigenstate_labels"] = list(model.eigenstate_labels)
    if model.name is not None:
        document["name"] = model.name
    return document


def eigenbasis(model: SystemModel) -> EigenSystem:
    """
    Diagonalises the Hamiltonian and conjugates the coupling operator into its eigenbasis.

    A Hamiltonian that is already diagonal is only sorted, so its basis transform is a
    permutation (the identity when the diagonal is already ascending).

    Args:
        model (SystemModel): A valid model.

    Returns:
        EigenSystem: Ascending, non-degenerate eigenfrequencies and S_{k1 k2}.

    Raises:
        DegenerateSpectrumError: Two levels are closer than the degeneracy tolerance.
    """
    hamiltonian = np.asarray(model.hamiltonian)
    n = model.dimension
    off_diagonal = hamiltonian - np.diag(np.diag(hamiltonian))
    if float(np.max(np.abs(off_diagonal))) <= model.hermiticity_epsilon(hamiltonian):
        diagonal = np.diag(hamiltonian).real
        order = np.argsort(diagonal, kind="stable")
        frequencies = diagonal[order]
        transform = np.eye(n, dtype=complex)[order]
    else:
        frequencies, vectors = scipy.linalg.eigh(hamiltonian)
        # fix the phase so the largest component of every eigenvector is real and positive
        pivots = np.argmax(np.abs(vectors), axis=0)
        phases = vectors[pivots, np.arange(n)]
        vectors = vectors * (np.abs(phases) / phases)[None, :]
        transform = vectors.conj().T

    _check_non_degenerate(frequencies, model.degeneracy_tolerance)

    unitarity = float(np.max(np.abs(transform @ transform.conj().T - np.eye(n))))
    if unitarity > max(model.hermiticity_tolerance, 1e-12):
        raise ModelValidationError(f"Eigenbasis transform is not unitary: residual {unitarity:.3e}")

    coupling = transform @ np.asarray(model.coupling_operator) @ transform.conj().T
    coupling = 0.5 * (coupling + coupling.conj().T)
    logger.debug("Eigenfrequencies: %s", frequencies)
    return EigenSystem(
        frequencies=frozen_array(frequencies, dtype=float),
        basis_transform=frozen_array(transform),
        coupling_in_eigenbasis=frozen_array(coupling),
        labels=model.eigenstate_labels,
    )


def _check_non_degenerate(frequencies: np.ndarray, relative_tolerance: float):
    if frequencies.shape[0] < 2:
        return
    spectral_range = float(frequencies[-1] - frequencies[0])
    epsilon = relative_tolerance * spectral_range
    gaps = np.diff(frequencies)
    collisions = np.flatnonzero(gaps <= epsilon)
    if collisions.size:
        k = int(collisions[0])
        raise DegenerateSpectrumError((k, k + 1), float(gaps[k]), epsilon)
