# oqs_package/coms/brute_force.py
"""
Exhaustive search over all 2^N diagonal 0/1 observables.

Every accepted mask is a projector constant of motion. The atoms of the lattice they
generate (the finest common refinement of their level sets) must coincide with the
invariant partition, which makes this an independent oracle for `invariant_partition`.
"""

import concurrent.futures
import logging
import numpy as np

from ..model.system import EigenSystem
from ..decomposition.partition import SubspacePartition, default_epsilon_s
from ..utils.config_helper import get_brute_force_max_dim, get_brute_force_chunk
from ..utils.error_helper import EnumerationLimitError

logger = logging.getLogger(__name__)


def _accepted_masks(weights: np.ndarray, start: int, stop: int, tolerance: float) -> np.ndarray:
    n = weights.shape[0]
    masks = (np.arange(start, stop)[:, None] >> np.arange(n)[None, :]) & 1
    # |S_{k1 k2}|^2 |m_k1 - m_k2| for every mask at once
    violations = np.abs(masks[:, :, None] - masks[:, None, :]) * weights[None, :, :]
    residuals = violations.reshape(masks.shape[0], -1).max(axis=1)
    return masks[residuals <= tolerance]


def enumerate_projector_coms(
    eig: EigenSystem,
    epsilon_s: float | None = None,
    max_dimension: int | None = None,
    chunk_size: int | None = None,
) -> np.ndarray:
    """
    Lists every 0/1 diagonal observable that satisfies the COM condition.

    Args:
        eig (EigenSystem): The eigenbasis representation.
        epsilon_s (float): Coupling threshold; the acceptance tolerance is epsilon_s^2.
        max_dimension (int): Enumeration guard.
        chunk_size (int): Masks per worker task.

    Returns:
        np.ndarray: Shape (n_accepted, N) array of 0/1 masks.
    """
    n = eig.dimension
    max_dimension = max_dimension or get_brute_force_max_dim()
    if n > max_dimension:
        raise EnumerationLimitError(
            f"Brute-force enumeration of 2^{n} projectors exceeds the limit of N = {max_dimension}"
        )
    if epsilon_s is None:
        epsilon_s = default_epsilon_s(eig)
    chunk_size = chunk_size or get_brute_force_chunk()
    weights = np.abs(np.asarray(eig.coupling_in_eigenbasis)) ** 2
    tolerance = epsilon_s**2
    total = 1 << n
    bounds = [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]

    with concurrent.futures.ThreadPoolExecutor() as executor:
        results = list(
            executor.map(
                lambda bound: _accepted_masks(weights, bound[0], bound[1], tolerance),
                bounds,
            )
        )
    accepted = np.concatenate(results, axis=0)
    logger.debug("Accepted %d of %d projector candidates", accepted.shape[0], total)
    return accepted


def brute_force_com_atoms(
    eig: EigenSystem,
    epsilon_s: float | None = None,
    max_dimension: int | None = None,
) -> SubspacePartition:
    """
    Partition into the atoms of the lattice of projector constants of motion.

    Two eigenstates share an atom iff every accepted projector takes the same value on both.

    Returns:
        SubspacePartition: The atoms in canonical order.
    """
    if epsilon_s is None:
        epsilon_s = default_epsilon_s(eig)
    accepted = enumerate_projector_coms(eig, epsilon_s, max_dimension)
    # column k of the accepted masks is the signature of eigenstate k
    _, atom_of = np.unique(accepted.T, axis=0, return_inverse=True)
    atom_of = np.asarray(atom_of).reshape(-1)
    blocks = tuple(tuple(np.flatnonzero(atom_of == atom).tolist()) for atom in np.unique(atom_of))
    partition = SubspacePartition(blocks=blocks, epsilon_s=epsilon_s)
    logger.info("Brute-force enumeration found %d atoms from %d projector COMs", partition.n_blocks, accepted.shape[0])
    return partition
