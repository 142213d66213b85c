# oqs_package/builtin_models/operators.py
"""
Operators of two two-level systems on the product basis (|e1 e2>, |g1 g2>, |e1 g2>, |g1 e2>).

Single-TLS operators are written on (|e>, |g>); kron of two of them yields the standard
order (ee, eg, ge, gg), which PRODUCT_ORDER rearranges into the product basis.
"""

import numpy as np

# standard kron order (ee, eg, ge, gg) -> product basis (ee, gg, eg, ge)
PRODUCT_ORDER = [0, 3, 1, 2]

LOWERING = np.array([[0.0, 0.0], [1.0, 0.0]])
INVERSION = np.diag([1.0, -1.0])
IDENTITY = np.eye(2)


def _product_basis(matrix: np.ndarray) -> np.ndarray:
    return matrix[np.ix_(PRODUCT_ORDER, PRODUCT_ORDER)]


def embed(operator: np.ndarray, site: int) -> np.ndarray:
    """Places a single-TLS operator on site 1 or 2 of the pair."""
    if site == 1:
        return _product_basis(np.kron(operator, IDENTITY))
    if site == 2:
        return _product_basis(np.kron(IDENTITY, operator))
    raise ValueError(f"Site must be 1 or 2, got {site}")


def lowering(site: int) -> np.ndarray:
    """sigma_i = |g_i><e_i|."""
    return embed(LOWERING, site)


def inversion(site: int) -> np.ndarray:
    """sigma_i^z = |e_i><e_i| - |g_i><g_i|."""
    return embed(INVERSION, site)


def number(site: int) -> np.ndarray:
    """sigma_i^dagger sigma_i, the excitation of site i."""
    sigma = lowering(site)
    return sigma.T @ sigma


def two_tls_hamiltonian(omega_1: float, omega_2: float, omega_r: float) -> np.ndarray:
    """omega_1 n_1 + omega_2 n_2 + Omega_R (sigma_1^dagger sigma_2 + sigma_2^dagger sigma_1)."""
    sigma_1, sigma_2 = lowering(1), lowering(2)
    exchange = sigma_1.T @ sigma_2 + sigma_2.T @ sigma_1
    return omega_1 * number(1) + omega_2 * number(2) + omega_r * exchange


def two_tls_coupling(a: float) -> np.ndarray:
    """S = sigma_1^z + a sigma_2^z."""
    return inversion(1) + a * inversion(2)


def single_excitation_projector() -> np.ndarray:
    """|e1 g2><e1 g2| + |g1 e2><g1 e2|."""
    return np.diag([0.0, 0.0, 1.0, 1.0])
