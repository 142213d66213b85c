# oqs_package/dynamics/rates.py
"""
Transition rates between Hamiltonian eigenstates.

The jump j -> i carries the rate lambda^2 G(omega_j - omega_i) |S_ij|^2. With a KMS
reservoir and Hermitian S these rates obey detailed balance, so every block's
Gibbs distribution is a fixed point of the Pauli equation.
"""

from dataclasses import dataclass
import logging
import numpy as np

from ..model.spectral import SpectralFunction, spectral_values
from ..model.system import EigenSystem
from ..decomposition.partition import default_epsilon_s
from ..utils.data_helper import frozen_array

logger = logging.getLogger(__name__)

COHERENCE_CONVENTIONS = ("literal", "outflow")


@dataclass(frozen=True, eq=False)
class RateMatrix:
    """
    Pauli-equation rates. rates[i, j] is the rate of population flow j -> i; the
    diagonal is zero and the total outflow of state i is sum_j rates[j, i].
    """

    rates: np.ndarray
    frequencies: np.ndarray | None = None
    temperature: float | None = None

    def __post_init__(self):
        rates = np.array(self.rates, dtype=float)
        if rates.ndim != 2 or rates.shape[0] != rates.shape[1]:
            raise ValueError(f"Rate matrix must be square, got shape {rates.shape}")
        if np.any(rates < 0) or not np.all(np.isfinite(rates)):
            raise ValueError("Rates must be finite and non-negative")
        np.fill_diagonal(rates, 0.0)
        object.__setattr__(self, "rates", frozen_array(rates))
        if self.frequencies is not None:
            object.__setattr__(self, "frequencies", frozen_array(self.frequencies, dtype=float))

    @property
    def dimension(self) -> int:
        return self.rates.shape[0]

    @property
    def outflow(self) -> np.ndarray:
        return self.rates.sum(axis=0)

    @property
    def generator(self) -> np.ndarray:
        """K with dp/dt = K p."""
        return self.rates - np.diag(self.outflow)

    def restrict(self, indices) -> "RateMatrix":
        """Rates among a subset of states, in the given order."""
        indices = np.asarray(indices, dtype=int)
        return RateMatrix(
            rates=self.rates[np.ix_(indices, indices)],
            frequencies=None if self.frequencies is None else self.frequencies[indices],
            temperature=self.temperature,
        )

    def detailed_balance_residual(self) -> float:
        """max |W_ij exp(-w_j/T) - W_ji exp(-w_i/T)| relative to the largest rate."""
        if self.frequencies is None or self.temperature is None:
            raise ValueError("Detailed balance needs frequencies and temperature")
        boltzmann = np.exp(-(self.frequencies - self.frequencies.min()) / self.temperature)
        flux = self.rates * boltzmann[None, :]
        scale = max(float(self.rates.max(initial=0.0)), np.finfo(float).tiny)
        return float(np.max(np.abs(flux - flux.T))) / scale


def jump_rates(
    eig: EigenSystem,
    reservoir: SpectralFunction,
    temperature: float,
    coupling_strength: float,
    epsilon_s: float | None = None,
) -> np.ndarray:
    """
    Rates of every jump operator S_ij |i><j|, including the diagonal (pure dephasing) ones.

    Args:
        eig (EigenSystem): Eigenbasis representation.
        reservoir (SpectralFunction): The reservoir.
        temperature (float): T > 0.
        coupling_strength (float): lambda >= 0.
        epsilon_s (float): Entries with |S_ij| <= epsilon_s carry no jump.

    Returns:
        np.ndarray: C[i, j] = lambda^2 G(omega_j - omega_i) |S_ij|^2.
    """
    if epsilon_s is None:
        epsilon_s = default_epsilon_s(eig)
    magnitude = np.abs(eig.coupling_in_eigenbasis)
    active = magnitude > epsilon_s
    bohr = eig.bohr_frequencies()
    rates = np.zeros((eig.dimension, eig.dimension), dtype=float)
    if coupling_strength == 0 or not np.any(active):
        return rates
    # G is only evaluated where a jump exists, so a finite table is enough for block-local models
    rates[active] = coupling_strength**2 * spectral_values(reservoir, temperature, bohr[active]) * magnitude[active] ** 2
    return rates


def rate_matrix(
    eig: EigenSystem,
    reservoir: SpectralFunction,
    temperature: float,
    coupling_strength: float,
    epsilon_s: float | None = None,
) -> RateMatrix:
    """
    Builds the Pauli-equation rate matrix W[i, j] = lambda^2 G(omega_j - omega_i) |S_ji|^2.
    """
    rates = jump_rates(eig, reservoir, temperature, coupling_strength, epsilon_s)
    np.fill_diagonal(rates, 0.0)
    logger.debug("Rate matrix built; largest rate %.3e", rates.max(initial=0.0))
    return RateMatrix(rates=rates, frequencies=eig.frequencies, temperature=temperature)


def coherence_decay_rates(
    eig: EigenSystem,
    reservoir: SpectralFunction,
    temperature: float,
    coupling_strength: float,
    convention: str = "literal",
    epsilon_s: float | None = None,
) -> np.ndarray:
    """
    Damping rates Gamma[k1, k2] of the coherences rho_{k1 k2}.

    "literal": Gamma = 1/2 sum_k (gamma_{k k1} |S_{k k1}|^2 + gamma_{k k2} |S_{k k2}|^2) with
    gamma_{k k1} = lambda^2 G(omega_k - omega_{k1}), including the k = k1, k2 terms.
    "outflow": Gamma = 1/2 (total jump rate out of k1 + total jump rate out of k2), the
    value generated by `lindblad_superoperator`.

    Returns:
        np.ndarray: Symmetric, non-negative, zero diagonal.
    """
    if convention not in COHERENCE_CONVENTIONS:
        raise ValueError(f"Unknown coherence convention '{convention}', expected one of {COHERENCE_CONVENTIONS}")
    rates = jump_rates(eig, reservoir, temperature, coupling_strength, epsilon_s)
    # rates[k1, k] = lambda^2 G(omega_k - omega_k1) |S_{k k1}|^2, the literal gamma_{k k1} term
    per_state = rates.sum(axis=1) if convention == "literal" else rates.sum(axis=0)
    gamma = 0.5 * (per_state[:, None] + per_state[None, :])
    np.fill_diagonal(gamma, 0.0)
    return gamma
