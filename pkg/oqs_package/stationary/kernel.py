# oqs_package/stationary/kernel.py

import logging
import numpy as np
from scipy.linalg import null_space

from ..decomposition.partition import SubspacePartition
from ..dynamics.rates import RateMatrix
from ..utils.config_helper import get_kernel_rcond
from ..utils.data_helper import Vector, check_type
from ..utils.error_helper import KernelDimensionError

logger = logging.getLogger(__name__)


def _check_block_consistent(rates: RateMatrix, part: SubspacePartition):
    if part.dimension != rates.dimension:
        raise ValueError(f"Partition covers {part.dimension} states, rate matrix has {rates.dimension}")
    crossing = rates.rates[~part.same_block_mask()]
    if crossing.size and crossing.max() > 0:
        raise ValueError(f"Rate matrix couples different blocks (largest crossing rate {crossing.max():.3e})")


def null_space_stationary(rates: RateMatrix, part: SubspacePartition, rcond: float | None = None) -> list[Vector]:
    """
    Stationary distribution of every block from the kernel of its rate generator.

    Args:
        rates (RateMatrix): Pauli rates, zero across blocks.
        part (SubspacePartition): The partition.
        rcond (float): Relative singular-value threshold.

    Returns:
        list: One probability vector per block, in block order.
    """
    check_type(rates, RateMatrix)
    _check_block_consistent(rates, part)
    rcond = rcond or get_kernel_rcond()
    distributions = []
    for number, block in enumerate(part.blocks):
        generator = rates.restrict(block).generator
        kernel = null_space(generator, rcond=rcond)
        if kernel.shape[1] != 1:
            raise KernelDimensionError(
                f"Block {number + 1} has a {kernel.shape[1]}-dimensional stationary kernel, expected 1"
            )
        vector = kernel[:, 0]
        distributions.append(vector / vector.sum())
        logger.debug("Block %d kernel found (size %d)", number + 1, len(block))
    return distributions


def fixed_point_residual(rates: RateMatrix, populations) -> float:
    """max |K p|, the largest population derivative."""
    return float(np.max(np.abs(rates.generator @ np.asarray(populations, dtype=float))))


def relaxation_rate(rates: RateMatrix, part: SubspacePartition, coherence_rates=None, rcond: float | None = None) -> float:
    """
    Slowest non-zero relaxation rate: the smallest non-zero |eigenvalue| of every block
    generator and, when given, the smallest positive coherence decay rate.

    Returns:
        float: The rate, or 0.0 if nothing relaxes.
    """
    rcond = rcond or get_kernel_rcond()
    candidates = []
    for block in part.blocks:
        if len(block) < 2:
            continue
        eigenvalues = np.abs(np.linalg.eigvals(rates.restrict(block).generator))
        nonzero = eigenvalues[eigenvalues > rcond * max(eigenvalues.max(), np.finfo(float).tiny)]
        if nonzero.size:
            candidates.append(float(nonzero.min()))
    if coherence_rates is not None:
        gamma = np.asarray(coherence_rates, dtype=float)
        positive = gamma[gamma > 0]
        if positive.size:
            candidates.append(float(positive.min()))
    return min(candidates) if candidates else 0.0
