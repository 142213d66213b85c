# oqs_package/dynamics/__init__.py
from .rates import RateMatrix, jump_rates, rate_matrix, coherence_decay_rates
from .lindblad import lindblad_superoperator, apply_generator, apply_adjoint, propagate_superoperator
from .evolution import DensityState, Trajectory, evolve_populations, evolve_density
