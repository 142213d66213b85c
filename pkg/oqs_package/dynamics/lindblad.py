# oqs_package/dynamics/lindblad.py
"""
The Davies generator as an explicit N^2 x N^2 superoperator.

Density matrices are vectorised column by column, so vec(A X B) = (B^T kron A) vec(X).
The superoperator is assembled jump by jump from the operators S_ij |i><j| and is used
as the reference against which the Pauli-plus-dephasing solution and the COM
conditions are checked.
"""

import logging
import numpy as np
from scipy.linalg import expm

from ..model.system import SystemModel, EigenSystem, eigenbasis
from ..utils.data_helper import Matrix
from .rates import jump_rates

logger = logging.getLogger(__name__)


def vectorise(matrix: Matrix) -> np.ndarray:
    return np.asarray(matrix, dtype=complex).reshape(-1, order="F")


def unvectorise(vector: np.ndarray, dimension: int) -> np.ndarray:
    return np.asarray(vector).reshape((dimension, dimension), order="F")


def lindblad_superoperator(
    model: SystemModel,
    eig: EigenSystem | None = None,
    epsilon_s: float | None = None,
) -> np.ndarray:
    """
    Assembles L with d vec(rho)/dt = L vec(rho), written in the eigenbasis.

    Args:
        model (SystemModel): The open system.
        eig (EigenSystem): Precomputed eigenbasis, computed when omitted.
        epsilon_s (float): Coupling threshold below which no jump is generated.

    Returns:
        np.ndarray: Complex matrix of shape (N^2, N^2).
    """
    if eig is None:
        eig = eigenbasis(model)
    n = eig.dimension
    identity = np.eye(n)
    hamiltonian = np.diag(eig.frequencies).astype(complex)
    generator = -1j * (np.kron(identity, hamiltonian) - np.kron(hamiltonian.T, identity))

    rates = jump_rates(eig, model.reservoir, model.temperature, model.coupling_strength, epsilon_s)
    coupling = eig.coupling_in_eigenbasis
    for i, j in zip(*np.nonzero(rates)):
        jump = np.zeros((n, n), dtype=complex)
        jump[i, j] = coupling[i, j]
        # the rate already contains |S_ij|^2, so the operator is normalised
        jump /= abs(coupling[i, j])
        product = jump.conj().T @ jump
        generator += rates[i, j] * (
            np.kron(jump.conj(), jump) - 0.5 * np.kron(identity, product) - 0.5 * np.kron(product.T, identity)
        )
    logger.debug("Assembled %d x %d superoperator from %d jumps", n * n, n * n, np.count_nonzero(rates))
    return generator


def apply_generator(superoperator: np.ndarray, rho: Matrix) -> np.ndarray:
    """Returns L(rho) as a matrix."""
    rho = np.asarray(rho, dtype=complex)
    return unvectorise(superoperator @ vectorise(rho), rho.shape[0])


def apply_adjoint(superoperator: np.ndarray, observable: Matrix) -> np.ndarray:
    """
    Returns the Heisenberg-picture generator applied to an observable, i.e. the
    Hilbert-Schmidt adjoint L^dagger(X) with Tr(X^dagger L(rho)) = Tr(L^dagger(X)^dagger rho).
    """
    observable = np.asarray(observable, dtype=complex)
    return unvectorise(superoperator.conj().T @ vectorise(observable), observable.shape[0])


def propagate_superoperator(superoperator: np.ndarray, rho0: Matrix, times) -> np.ndarray:
    """
    Exact propagation rho(t) = exp(L t) rho(0).

    Returns:
        np.ndarray: Shape (len(times), N, N).
    """
    rho0 = np.asarray(rho0, dtype=complex)
    n = rho0.shape[0]
    start = vectorise(rho0)
    return np.array([unvectorise(expm(superoperator * t) @ start, n) for t in np.asarray(times, dtype=float)])
