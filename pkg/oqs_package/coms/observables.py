# oqs_package/coms/observables.py
"""
Constants of motion that are diagonal in the Hamiltonian eigenbasis.

A diagonal observable I = sum_k I_k |k><k| is conserved iff
|S_{k1 k2}|^2 (I_{k1} - I_{k2}) = 0 for every pair, i.e. iff it is constant on every
invariant block. The block projectors therefore span all such constants.
"""

from dataclasses import dataclass
import logging
import numpy as np

from ..model.system import SystemModel, EigenSystem, eigenbasis
from ..model.spectral import spectral_values
from ..model.validation import sample_frequencies
from ..decomposition.partition import SubspacePartition, default_epsilon_s
from ..dynamics.lindblad import lindblad_superoperator, apply_adjoint
from ..dynamics.evolution import Trajectory
from ..utils.config_helper import get_com_tolerance_factor
from ..utils.data_helper import Vector, frozen_array
from ..utils.error_helper import NamedComError

logger = logging.getLogger(__name__)

# values of the two-TLS named constants on the psi labels 1..4
EXCITATION_NUMBER = {1: 2.0, 2: 0.0, 3: 1.0, 4: 1.0}
POPULATION_INVERSION = {1: 2.0, 2: -2.0, 3: 0.0, 4: 0.0}


@dataclass(frozen=True, eq=False)
class DiagonalObservable:
    """Eigenvalues I_1..I_N of an observable diagonal in the eigenbasis."""

    values: Vector
    name: str | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or not np.all(np.isfinite(values)):
            raise ValueError("Observable values must be a finite 1-d vector")
        object.__setattr__(self, "values", frozen_array(values))

    @property
    def dimension(self) -> int:
        return self.values.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.values).astype(complex)

    def value_range(self) -> float:
        return float(self.values.max() - self.values.min())

    def block_values(self, part: SubspacePartition) -> list[float] | None:
        """The constant value on every block, or None if the observable varies inside one."""
        values = []
        for block in part.blocks:
            on_block = self.values[list(block)]
            if np.ptp(on_block) > 0:
                return None
            values.append(float(on_block[0]))
        return values


@dataclass(frozen=True, eq=False)
class ComBasis:
    """Block projectors P_l, one per invariant block, in canonical block order."""

    projectors: tuple[DiagonalObservable, ...]
    partition: SubspacePartition

    @property
    def independent_count(self) -> int:
        """Number of independent constants besides the identity."""
        return len(self.projectors) - 1

    def combination(self, coefficients) -> DiagonalObservable:
        """sum_l c_l P_l, the general constant of motion."""
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (len(self.projectors),):
            raise ValueError(f"Expected {len(self.projectors)} coefficients, got {coefficients.shape}")
        return DiagonalObservable(values=sum(c * p.values for c, p in zip(coefficients, self.projectors)))


def basis_projectors(part: SubspacePartition) -> ComBasis:
    """
    Builds the indicator projector of every block.

    Args:
        part (SubspacePartition): The invariant partition.

    Returns:
        ComBasis: L projectors summing to the identity; L - 1 of them are independent constants.
    """
    projectors = []
    for number, block in enumerate(part.blocks):
        values = np.zeros(part.dimension)
        values[list(block)] = 1.0
        projectors.append(DiagonalObservable(values=values, name=f"P_{number + 1}"))
    return ComBasis(projectors=tuple(projectors), partition=part)


def _check_dimension(eig: EigenSystem, obs: DiagonalObservable):
    if obs.dimension != eig.dimension:
        raise ValueError(f"Observable has {obs.dimension} values, the eigensystem has dimension {eig.dimension}")


def com_condition_residual(eig: EigenSystem, obs: DiagonalObservable) -> float:
    """max over (k1, k2) of |S_{k1 k2}|^2 |I_{k1} - I_{k2}|."""
    _check_dimension(eig, obs)
    weights = np.abs(eig.coupling_in_eigenbasis) ** 2
    differences = np.abs(obs.values[:, None] - obs.values[None, :])
    return float(np.max(weights * differences))


def commutator_residual(eig: EigenSystem, obs: DiagonalObservable) -> float:
    """max |[S, I]| entry, i.e. max |S_{k1 k2} (I_{k2} - I_{k1})|."""
    _check_dimension(eig, obs)
    s = np.asarray(eig.coupling_in_eigenbasis)
    commutator = s @ obs.matrix - obs.matrix @ s
    return float(np.max(np.abs(commutator)))


def hamiltonian_commutator_residual(eig: EigenSystem, obs: DiagonalObservable) -> float:
    _check_dimension(eig, obs)
    h = np.diag(eig.frequencies).astype(complex)
    return float(np.max(np.abs(h @ obs.matrix - obs.matrix @ h)))


def condition_tolerance(obs: DiagonalObservable, epsilon_s: float) -> float:
    """Couplings at or below epsilon_s count as zero, so residuals up to epsilon_s^2 times the value spread pass."""
    return epsilon_s**2 * max(1.0, obs.value_range())


def is_com(eig: EigenSystem, obs: DiagonalObservable, epsilon_s: float | None = None) -> bool:
    if epsilon_s is None:
        epsilon_s = default_epsilon_s(eig)
    return com_condition_residual(eig, obs) <= condition_tolerance(obs, epsilon_s)


def lindblad_tolerance(model: SystemModel) -> float:
    """
    Acceptance threshold for `lindblad_residual`: factor * lambda^2 * the largest G at the sampled frequencies.
    """
    frequencies = sample_frequencies(model)
    scale = float(np.max(spectral_values(model.reservoir, model.temperature, frequencies))) if frequencies.size else 1.0
    return get_com_tolerance_factor() * model.coupling_strength**2 * max(scale, 1.0)


def lindblad_residual(
    model: SystemModel,
    obs: DiagonalObservable,
    eig: EigenSystem | None = None,
    superoperator: np.ndarray | None = None,
) -> float:
    """
    Applies the adjoint Lindblad generator to the observable.

    Args:
        model (SystemModel): The open system.
        obs (DiagonalObservable): Observable in the eigenbasis.
        eig (EigenSystem): Precomputed eigenbasis.
        superoperator (np.ndarray): Precomputed generator, reused across observables.

    Returns:
        float: max |L^dagger(I)| entry; zero exactly for constants of motion.
    """
    if eig is None:
        eig = eigenbasis(model)
    _check_dimension(eig, obs)
    if superoperator is None:
        superoperator = lindblad_superoperator(model, eig)
    return float(np.max(np.abs(apply_adjoint(superoperator, obs.matrix))))


def named_coms_two_tls(
    eig: EigenSystem,
    part: SubspacePartition,
    interacting: bool,
    include_energy: bool | None = None,
) -> list[tuple[str, DiagonalObservable]]:
    """
    The physically named constants of the two-TLS model: excitation number, population
    inversion and, without interaction, the energy.

    Args:
        eig (EigenSystem): Eigensystem of a builtin two-TLS model, carrying psi labels.
        part (SubspacePartition): Its invariant partition.
        interacting (bool): Whether the Rabi coupling is switched on.
        include_energy (bool): Defaults to `not interacting`.

    Returns:
        list: (name, observable) pairs, each verified to be a constant of motion.
    """
    if eig.labels is None or sorted(eig.labels) != [1, 2, 3, 4]:
        raise NamedComError("Named constants need a two-TLS eigensystem labelled psi_1..psi_4")
    if include_energy is None:
        include_energy = not interacting
    if include_energy and interacting:
        raise NamedComError("The energy is not a constant of motion once the two-level systems interact")

    named = [
        ("excitation_number", DiagonalObservable([EXCITATION_NUMBER[label] for label in eig.labels], "excitation_number")),
        ("population_inversion", DiagonalObservable([POPULATION_INVERSION[label] for label in eig.labels], "population_inversion")),
    ]
    if include_energy:
        named.append(("energy", DiagonalObservable(eig.frequencies, "energy")))

    for name, obs in named:
        if not is_com(eig, obs, part.epsilon_s):
            raise NamedComError(
                f"'{name}' is not conserved for this model: residual {com_condition_residual(eig, obs):.3e}"
            )
    return named


def com_expectations(trajectory: Trajectory, obs: DiagonalObservable) -> np.ndarray:
    """<I>(t) = sum_k I_k p_k(t) along a trajectory."""
    if obs.dimension != trajectory.dimension:
        raise ValueError("Observable and trajectory dimensions differ")
    return trajectory.populations @ obs.values
