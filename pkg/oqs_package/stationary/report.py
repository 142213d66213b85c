# oqs_package/stationary/report.py

import numpy as np

from ..dynamics.rates import RateMatrix
from ..utils.config_helper import get_kernel_rcond
from .gibbs import StationaryPrediction, is_unique_stationary
from .kernel import null_space_stationary, fixed_point_residual


def oracle_distance(prediction: StationaryPrediction, kernel_vectors) -> float:
    """Largest entrywise difference between block Gibbs vectors and kernel vectors."""
    return max(float(np.max(np.abs(g - k))) for g, k in zip(prediction.block_gibbs, kernel_vectors))


def stationary_report(rates: RateMatrix, prediction: StationaryPrediction) -> dict:
    """
    Stationary report with 1-based block numbering.

    Args:
        rates (RateMatrix): Pauli rates of the model.
        prediction (StationaryPrediction): The predicted stationary state.

    Returns:
        dict: Weights, block distributions, assembled populations and both residuals.
    """
    kernel_vectors = null_space_stationary(rates, prediction.partition)
    return {
        "blocks": [[i + 1 for i in block] for block in prediction.partition.blocks],
        "weights": prediction.weights.tolist(),
        "block_distributions": [g.tolist() for g in prediction.block_gibbs],
        "assembled_populations": prediction.populations.tolist(),
        "fixed_point_residual": fixed_point_residual(rates, prediction.populations),
        "oracle_distance": oracle_distance(prediction, kernel_vectors),
        "unique": is_unique_stationary(prediction.partition),
        "tolerances": {
            "epsilon_s": prediction.partition.epsilon_s,
            "kernel_rcond": get_kernel_rcond(),
        },
    }
