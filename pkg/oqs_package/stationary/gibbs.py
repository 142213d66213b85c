# oqs_package/stationary/gibbs.py
"""
Stationary states of the Pauli equation.

Each invariant block relaxes to its own Gibbs distribution while keeping the
population it started with, so the stationary state is the mixture
sum_l w_l Gibbs_l with w_l the initial weight of block l.
"""

from dataclasses import dataclass
import logging
import numpy as np
from scipy.special import softmax

from ..model.system import SystemModel, EigenSystem, eigenbasis
from ..decomposition.partition import SubspacePartition, invariant_partition
from ..dynamics.evolution import DensityState
from ..utils.config_helper import get_trace_tolerance
from ..utils.data_helper import Vector
from ..utils.error_helper import DensityStateError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StationaryPrediction:
    """
    Attributes:
        weights: Initial population of every block, in canonical block order.
        block_gibbs: Gibbs distribution restricted to every block.
        assembled: The diagonal stationary state.
        partition: The partition the prediction was built on.
    """

    weights: Vector
    block_gibbs: tuple[Vector, ...]
    assembled: DensityState
    partition: SubspacePartition

    @property
    def populations(self) -> Vector:
        return self.assembled.populations


def gibbs_state(eig: EigenSystem, temperature: float) -> Vector:
    """
    Gibbs distribution p_i = exp(-omega_i/T) / Z over the eigenstates.

    Args:
        eig (EigenSystem): The eigenbasis.
        temperature (float): T > 0.

    Returns:
        np.ndarray: Probabilities in eigenstate order.
    """
    return block_gibbs_state(eig.frequencies, temperature)


def block_gibbs_state(frequencies, temperature: float) -> Vector:
    if temperature <= 0:
        raise ValueError(f"Temperature must be positive, got {temperature}")
    # softmax shifts by the maximum exponent internally
    return softmax(-np.asarray(frequencies, dtype=float) / temperature)


def block_weights(part: SubspacePartition, rho0) -> Vector:
    """
    Total initial population of every block.

    Args:
        part (SubspacePartition): The partition.
        rho0 (DensityState | np.ndarray): Initial state in the eigenbasis.

    Returns:
        np.ndarray: One weight per block; the weights sum to one.
    """
    if not isinstance(rho0, DensityState):
        rho0 = DensityState(matrix=rho0)
    if rho0.dimension != part.dimension:
        raise DensityStateError(f"State has dimension {rho0.dimension}, partition covers {part.dimension}")
    diagonal = np.diag(rho0.matrix)
    if np.max(np.abs(diagonal.imag)) > get_trace_tolerance():
        raise DensityStateError("Density matrix diagonal has an imaginary part")
    populations = diagonal.real
    return np.array([populations[list(block)].sum() for block in part.blocks])


def stationary_state(
    model: SystemModel,
    rho0,
    eig: EigenSystem | None = None,
    part: SubspacePartition | None = None,
    epsilon_s: float | None = None,
) -> StationaryPrediction:
    """
    Predicts the stationary state reached from rho0.

    Args:
        model (SystemModel): The open system.
        rho0 (DensityState | np.ndarray): Initial state in the eigenbasis.
        eig (EigenSystem): Precomputed eigenbasis.
        part (SubspacePartition): Precomputed partition.
        epsilon_s (float): Coupling threshold used when the partition is computed here.

    Returns:
        StationaryPrediction: Block weights, block Gibbs vectors and the assembled state.
    """
    if eig is None:
        eig = eigenbasis(model)
    if part is None:
        part = invariant_partition(eig, epsilon_s)
    weights = block_weights(part, rho0)

    populations = np.zeros(eig.dimension)
    distributions = []
    for weight, block in zip(weights, part.blocks):
        distribution = block_gibbs_state(eig.frequencies[list(block)], model.temperature)
        distributions.append(distribution)
        populations[list(block)] = weight * distribution

    time = rho0.time if isinstance(rho0, DensityState) else 0.0
    assembled = DensityState(matrix=np.diag(populations).astype(complex), time=time, check=False)
    logger.info("Stationary state assembled from %d block Gibbs states", part.n_blocks)
    return StationaryPrediction(
        weights=weights,
        block_gibbs=tuple(distributions),
        assembled=assembled,
        partition=part,
    )


def is_unique_stationary(part: SubspacePartition) -> bool:
    """A single invariant block means the thermal state is reached from every initial state."""
    return part.n_blocks == 1


def state_distance(rho, sigma) -> float:
    """Entrywise L1 distance sum |rho_ij - sigma_ij|."""
    return float(np.sum(np.abs(np.asarray(rho) - np.asarray(sigma))))
