# oqs_package/tests/model_factory.py
"""
Random models for property tests. Every builder takes a numpy Generator so tests stay seeded.
"""

import numpy as np

from ..model.spectral import SpectralFunction
from ..model.system import SystemModel

FLAT = SpectralFunction(family="flat-kms", g0=1.0)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))[None, :]


def random_spectrum(rng: np.random.Generator, n: int, min_gap: float = 0.1, max_gap: float = 0.5) -> np.ndarray:
    """Ascending levels separated by at least min_gap."""
    return rng.uniform(-1.0, 1.0) + np.concatenate([[0.0], np.cumsum(rng.uniform(min_gap, max_gap, size=n - 1))])


def random_entry(rng: np.random.Generator, low: float = 0.5, high: float = 1.0) -> complex:
    return rng.uniform(low, high) * np.exp(1j * rng.uniform(0.0, 2 * np.pi))


def random_blocks(rng: np.random.Generator, n: int, n_blocks: int) -> list[list[int]]:
    """Random partition of 0..n-1 into n_blocks non-empty groups."""
    order = rng.permutation(n)
    cuts = np.sort(rng.choice(np.arange(1, n), size=n_blocks - 1, replace=False)) if n_blocks > 1 else []
    return [sorted(part.tolist()) for part in np.split(order, cuts)]


def block_coupling(
    rng: np.random.Generator,
    n: int,
    blocks: list[list[int]],
    density: float = 1.0,
    diagonal: bool = True,
) -> np.ndarray:
    """
    Hermitian S whose off-diagonal entries vanish across blocks. Inside a block a chain
    keeps it connected and every further pair is coupled with probability `density`.
    """
    s = np.zeros((n, n), dtype=complex)
    for block in blocks:
        for first, second in zip(block[:-1], block[1:]):
            s[first, second] = random_entry(rng)
        for x, first in enumerate(block):
            for second in block[x + 2 :]:
                if rng.uniform() < density:
                    s[first, second] = random_entry(rng)
    s = s + s.conj().T
    if diagonal:
        s += np.diag(rng.uniform(0.5, 1.0, size=n) * rng.choice([-1.0, 1.0], size=n))
    return s


def sparse_coupling(rng: np.random.Generator, n: int, sparsity: float = 0.5) -> np.ndarray:
    """Hermitian S with each off-diagonal pair present with probability 1 - sparsity."""
    s = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.uniform() >= sparsity:
                s[i, j] = random_entry(rng)
    s = s + s.conj().T
    return s + np.diag(rng.uniform(-1.0, 1.0, size=n))


def model_from_eigenbasis(
    frequencies,
    coupling,
    rng: np.random.Generator | None = None,
    temperature: float = 1.0,
    reservoir: SpectralFunction = FLAT,
    coupling_strength: float = 1.0,
) -> SystemModel:
    """
    Model with the given eigenfrequencies and coupling written in the eigenbasis. With an rng
    both operators are rotated by a random unitary, so the input basis is not the eigenbasis.
    """
    h = np.diag(np.asarray(frequencies, dtype=float)).astype(complex)
    s = np.asarray(coupling, dtype=complex)
    if rng is not None:
        u = random_unitary(rng, h.shape[0])
        h = u @ h @ u.conj().T
        s = u @ s @ u.conj().T
        h = 0.5 * (h + h.conj().T)
        s = 0.5 * (s + s.conj().T)
    return SystemModel(
        hamiltonian=h,
        coupling_operator=s,
        reservoir=reservoir,
        temperature=temperature,
        coupling_strength=coupling_strength,
    )


def random_density(rng: np.random.Generator, n: int) -> np.ndarray:
    """Full-rank density matrix with coherences."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_distribution(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.dirichlet(np.ones(n))
