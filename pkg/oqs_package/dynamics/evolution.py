# oqs_package/dynamics/evolution.py

from dataclasses import dataclass
import logging
import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from ..model.system import SystemModel, EigenSystem, eigenbasis
from ..decomposition.partition import SubspacePartition
from ..utils.config_helper import (
    get_trace_tolerance,
    get_positivity_tolerance,
    get_integration_method,
    get_rtol,
    get_atol,
    get_coherence_convention,
)
from ..utils.data_helper import Matrix, Vector, check_type, frozen_array
from ..utils.error_helper import DensityStateError, IntegrationError
from .rates import RateMatrix, rate_matrix, coherence_decay_rates

logger = logging.getLogger(__name__)

IMPLICIT_METHODS = ("Radau", "BDF", "LSODA")


@dataclass(frozen=True, eq=False)
class DensityState:
    """
    A density matrix in the eigenbasis at time `time`.

    With `check=True` the state must be Hermitian, have unit trace and no eigenvalue
    below minus the positivity tolerance.
    """

    matrix: Matrix
    time: float = 0.0
    check: bool = True

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DensityStateError(f"Density matrix must be square, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise DensityStateError("Density matrix contains non-finite entries")
        object.__setattr__(self, "matrix", frozen_array(matrix))
        if self.check:
            self.validate()

    def validate(self):
        tolerance = get_trace_tolerance()
        hermiticity = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        if hermiticity > tolerance:
            raise DensityStateError(f"Density matrix is not Hermitian: max |rho - rho^dagger| = {hermiticity:.3e}")
        trace = np.trace(self.matrix)
        if abs(trace - 1.0) > tolerance:
            raise DensityStateError(f"Density matrix trace is {trace.real:.12g}, expected 1")
        smallest = self.min_eigenvalue
        if smallest < -get_positivity_tolerance():
            raise DensityStateError(f"Density matrix is not positive: smallest eigenvalue {smallest:.3e}")

    @classmethod
    def from_populations(cls, populations, time: float = 0.0) -> "DensityState":
        """Diagonal state with the given eigenstate populations."""
        return cls(matrix=np.diag(np.asarray(populations, dtype=float)).astype(complex), time=time)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def populations(self) -> Vector:
        return np.real(np.diag(self.matrix)).copy()

    @property
    def min_eigenvalue(self) -> float:
        hermitian_part = 0.5 * (self.matrix + self.matrix.conj().T)
        return float(np.linalg.eigvalsh(hermitian_part).min())


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Sampled solution of the master equation.

    Attributes:
        times: Sample times, ascending.
        populations: Shape (n_times, N), eigenstate populations.
        densities: Shape (n_times, N, N) when coherences were propagated, else None.
    """

    times: np.ndarray
    populations: np.ndarray
    densities: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "times", frozen_array(self.times, dtype=float))
        object.__setattr__(self, "populations", frozen_array(self.populations, dtype=float))
        if self.densities is not None:
            object.__setattr__(self, "densities", frozen_array(self.densities, dtype=complex))

    @property
    def dimension(self) -> int:
        return self.populations.shape[1]

    @property
    def final_populations(self) -> Vector:
        return self.populations[-1].copy()

    def states(self) -> list[DensityState]:
        """Samples as unchecked DensityState objects."""
        if self.densities is None:
            matrices = [np.diag(p).astype(complex) for p in self.populations]
        else:
            matrices = list(self.densities)
        return [DensityState(matrix=m, time=t, check=False) for m, t in zip(matrices, self.times)]

    def trace_drift(self) -> float:
        """max over samples of |Tr rho(t) - 1|."""
        return float(np.max(np.abs(self.populations.sum(axis=1) - 1.0)))

    def block_weights(self, part: SubspacePartition) -> np.ndarray:
        """Shape (n_times, n_blocks), total population of every block."""
        return np.stack([self.populations[:, list(block)].sum(axis=1) for block in part.blocks], axis=1)

    def block_weight_drift(self, part: SubspacePartition) -> float:
        weights = self.block_weights(part)
        return float(np.max(np.abs(weights - weights[0])))

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue over all samples (smallest population without coherences)."""
        if self.densities is None:
            return float(self.populations.min())
        hermitian = 0.5 * (self.densities + np.conj(np.swapaxes(self.densities, 1, 2)))
        return float(np.linalg.eigvalsh(hermitian).min())

    def max_coherence(self) -> float:
        if self.densities is None:
            return 0.0
        off_diagonal = self.densities * (1 - np.eye(self.dimension))[None, :, :]
        return float(np.max(np.abs(off_diagonal)))

    def to_dataframe(self, coherences: bool = False) -> pd.DataFrame:
        """
        Tabulates the trajectory with 1-based column names.

        Populations are clipped at zero for reporting only; integrator noise of order
        atol can otherwise show up as tiny negative numbers.

        Args:
            coherences (bool): Add abs_rho_i_j columns for i < j.

        Returns:
            pd.DataFrame: Columns t, p_1..p_N and optionally abs_rho_i_j.
        """
        data = {"t": self.times}
        for k in range(self.dimension):
            data[f"p_{k + 1}"] = np.clip(self.populations[:, k], 0.0, None)
        if coherences:
            if self.densities is None:
                raise ValueError("Trajectory has no coherences")
            for i in range(self.dimension):
                for j in range(i + 1, self.dimension):
                    data[f"abs_rho_{i + 1}_{j + 1}"] = np.abs(self.densities[:, i, j])
        return pd.DataFrame(data)

    def summary(self, part: SubspacePartition | None = None) -> dict:
        summary = {
            "n_samples": int(self.times.size),
            "t_max": float(self.times[-1]),
            "final_populations": self.final_populations.tolist(),
            "trace_drift": self.trace_drift(),
            "min_eigenvalue": self.min_eigenvalue(),
        }
        if part is not None:
            summary["block_weight_drift"] = self.block_weight_drift(part)
            summary["final_block_weights"] = self.block_weights(part)[-1].tolist()
        if self.densities is not None:
            summary["final_max_coherence"] = float(np.max(np.abs(self.densities[-1] - np.diag(np.diag(self.densities[-1])))))
        return summary


def check_times(times) -> np.ndarray:
    """Sample times must be finite, non-negative and strictly increasing."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.ndim != 1 or times.size == 0:
        raise ValueError("Sample times must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(times)) or times[0] < 0:
        raise ValueError("Sample times must be finite and non-negative")
    if np.any(np.diff(times) <= 0):
        raise ValueError("Sample times must be strictly increasing")
    return times


def check_distribution(p0) -> np.ndarray:
    """A probability vector: finite, non-negative within tolerance, summing to one."""
    p0 = np.asarray(p0, dtype=float)
    if p0.ndim != 1 or not np.all(np.isfinite(p0)):
        raise DensityStateError("Initial distribution must be a finite 1-d vector")
    if p0.min(initial=0.0) < -get_positivity_tolerance():
        raise DensityStateError(f"Initial distribution has a negative entry {p0.min():.3e}")
    if abs(p0.sum() - 1.0) > get_trace_tolerance():
        raise DensityStateError(f"Initial distribution sums to {p0.sum():.12g}, expected 1")
    return p0


def evolve_populations(
    rates: RateMatrix,
    p0,
    times,
    method: str | None = None,
    rtol: float | None = None,
    atol: float | None = None,
) -> Trajectory:
    """
    Integrates dp/dt = K p with K the generator of the rate matrix.

    Args:
        rates (RateMatrix): Pauli rates.
        p0: Initial distribution.
        times: Output times, strictly increasing from t >= 0; integration starts at 0.
        method (str): A `solve_ivp` method or "exact" for matrix exponentials.
        rtol (float): Relative tolerance of the integrator.
        atol (float): Absolute tolerance of the integrator.

    Returns:
        Trajectory: Populations only, shape (len(times), N).
    """
    check_type(rates, RateMatrix)
    p0 = check_distribution(p0)
    times = check_times(times)
    if p0.size != rates.dimension:
        raise DensityStateError(f"Initial distribution has {p0.size} entries, expected {rates.dimension}")
    method = method or get_integration_method()
    rtol = rtol or get_rtol()
    atol = atol or get_atol()
    generator = rates.generator

    if method == "exact":
        return Trajectory(times=times, populations=np.array([expm(generator * t) @ p0 for t in times]))
    if times[-1] == 0:
        return Trajectory(times=times, populations=np.tile(p0, (times.size, 1)))

    options = {"jac": generator} if method in IMPLICIT_METHODS else {}
    solution = solve_ivp(
        lambda t, p: generator @ p,
        (0.0, float(times[-1])),
        p0,
        method=method,
        t_eval=times,
        rtol=rtol,
        atol=atol,
        **options,
    )
    if not solution.success:
        raise IntegrationError(f"Population integration failed: {solution.message}")
    logger.debug("%s integrated to t = %.3g with %d evaluations", method, times[-1], solution.nfev)
    return Trajectory(times=times, populations=solution.y.T)


def evolve_density(
    model: SystemModel,
    rho0,
    times,
    eig: EigenSystem | None = None,
    convention: str | None = None,
    epsilon_s: float | None = None,
    method: str | None = None,
) -> Trajectory:
    """
    Evolves a density matrix: populations by the Pauli equation, every coherence
    rotating at its Bohr frequency and decaying at its rate Gamma.

    Args:
        model (SystemModel): The open system.
        rho0 (DensityState | np.ndarray): Initial state in the eigenbasis.
        times: Output times.
        eig (EigenSystem): Precomputed eigenbasis.
        convention (str): Coherence decay convention, "literal" or "outflow".
        epsilon_s (float): Coupling threshold.
        method (str): Population integration method.

    Returns:
        Trajectory: Populations and full density matrices.
    """
    if not isinstance(rho0, DensityState):
        rho0 = DensityState(matrix=rho0)
    if eig is None:
        eig = eigenbasis(model)
    if rho0.dimension != eig.dimension:
        raise DensityStateError(f"Initial state has dimension {rho0.dimension}, expected {eig.dimension}")
    convention = convention or get_coherence_convention()
    times = check_times(times)

    rates = rate_matrix(eig, model.reservoir, model.temperature, model.coupling_strength, epsilon_s)
    populations = evolve_populations(rates, rho0.populations, times, method=method).populations
    gamma = coherence_decay_rates(
        eig, model.reservoir, model.temperature, model.coupling_strength, convention, epsilon_s
    )
    # rho_{k1 k2} rotates as exp(-i (omega_k1 - omega_k2) t)
    bohr = eig.frequencies[:, None] - eig.frequencies[None, :]
    factors = np.exp(-(gamma[None, :, :] + 1j * bohr[None, :, :]) * times[:, None, None])
    densities = rho0.matrix[None, :, :] * factors
    diagonal = np.arange(eig.dimension)
    densities[:, diagonal, diagonal] = populations

    trajectory = Trajectory(times=times, populations=populations, densities=densities)
    smallest = trajectory.min_eigenvalue()
    if smallest < -get_positivity_tolerance():
        logger.warning(
            "Evolved state loses positivity (smallest eigenvalue %.3e) with the '%s' coherence convention",
            smallest,
            convention,
        )
    return trajectory
