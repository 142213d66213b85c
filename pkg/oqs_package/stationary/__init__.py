# oqs_package/stationary/__init__.py
from .gibbs import (
    StationaryPrediction,
    gibbs_state,
    block_weights,
    stationary_state,
    is_unique_stationary,
    state_distance,
)
from .kernel import null_space_stationary, fixed_point_residual, relaxation_rate
from .report import stationary_report, oracle_distance
