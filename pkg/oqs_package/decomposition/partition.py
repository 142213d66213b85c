# oqs_package/decomposition/partition.py
"""
Invariant-subspace decomposition of the eigenbasis.

Repeatedly applying S to an eigenvector and collecting every eigenvector that
appears with a non-zero coefficient closes a set of basis vectors under S. Since
S is Hermitian, that closure is exactly a connected component of the graph whose
edges are the non-vanishing off-diagonal entries S_ij, so the blocks are found by
a breadth-first component search.
"""

from dataclasses import dataclass
import logging
import networkx as nx
import numpy as np

from ..model.system import EigenSystem
from ..utils.config_helper import get_epsilon_s_relative
from ..utils.data_helper import Block, Matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubspacePartition:
    """
    A canonical partition of the 0-based eigenstate indices into invariant blocks.

    Blocks are sorted by their smallest member and members ascend within a block.
    """

    blocks: tuple[Block, ...]
    epsilon_s: float = 0.0

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(int(i) for i in block)) for block in self.blocks), key=lambda b: b[0]))
        members = [i for block in blocks for i in block]
        if any(len(block) == 0 for block in blocks):
            raise ValueError("Partition blocks must be non-empty")
        if sorted(members) != list(range(len(members))):
            raise ValueError("Partition blocks must be disjoint and cover 0..N-1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dimension(self) -> int:
        return sum(len(block) for block in self.blocks)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    @property
    def permutation(self) -> tuple[int, ...]:
        """New position p holds old index permutation[p]: B_1 first, then B_2, and so on."""
        return tuple(i for block in self.blocks for i in block)

    def block_of(self) -> np.ndarray:
        """Block number of every eigenstate index."""
        labels = np.empty(self.dimension, dtype=int)
        for number, block in enumerate(self.blocks):
            labels[list(block)] = number
        return labels

    def same_block_mask(self) -> np.ndarray:
        labels = self.block_of()
        return labels[:, None] == labels[None, :]


def default_epsilon_s(eig: EigenSystem) -> float:
    """Relative threshold times the largest |S_ij|; zero for a vanishing coupling."""
    return get_epsilon_s_relative() * float(np.max(np.abs(eig.coupling_in_eigenbasis)))


def coupling_graph(eig: EigenSystem, epsilon_s: float | None = None) -> nx.Graph:
    """
    Builds the undirected coupling graph over eigenstate indices.

    Args:
        eig (EigenSystem): The eigenbasis representation.
        epsilon_s (float): Entries with |S_ij| <= epsilon_s count as zero. Defaults to
            the configured relative threshold.

    Returns:
        nx.Graph: Nodes 0..N-1; edge (i, j), i != j, iff |S_ij| > epsilon_s.
    """
    if epsilon_s is None:
        epsilon_s = default_epsilon_s(eig)
    magnitude = np.abs(eig.coupling_in_eigenbasis)
    graph = nx.Graph()
    graph.add_nodes_from(range(eig.dimension))
    rows, cols = np.nonzero(np.triu(magnitude > epsilon_s, k=1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def invariant_partition(eig: EigenSystem, epsilon_s: float | None = None) -> SubspacePartition:
    """
    Partitions the eigenbasis into minimal invariant subspaces of S.

    Args:
        eig (EigenSystem): The eigenbasis representation.
        epsilon_s (float): Coupling threshold, see `coupling_graph`.

    Returns:
        SubspacePartition: Connected components of the coupling graph in canonical order.
    """
    if epsilon_s is None:
        epsilon_s = default_epsilon_s(eig)
    graph = coupling_graph(eig, epsilon_s)
    partition = SubspacePartition(
        blocks=tuple(tuple(component) for component in nx.connected_components(graph)),
        epsilon_s=epsilon_s,
    )
    logger.info(
        "Found %d invariant subspaces with sizes %s (epsilon_s = %.3e)",
        partition.n_blocks,
        partition.block_sizes,
        epsilon_s,
    )
    return partition


def block_permuted_coupling(eig: EigenSystem, part: SubspacePartition) -> Matrix:
    """
    Reorders the eigenbasis so that the coupling matrix becomes block-diagonal.

    Args:
        eig (EigenSystem): The eigenbasis representation.
        part (SubspacePartition): A partition of the same eigenbasis.

    Returns:
        np.ndarray: P S P^T with the blocks along the diagonal.
    """
    if part.dimension != eig.dimension:
        raise ValueError(
            f"Partition covers {part.dimension} states but the eigensystem has {eig.dimension}"
        )
    order = np.array(part.permutation)
    permuted = np.asarray(eig.coupling_in_eigenbasis)[np.ix_(order, order)]
    off_block = max_off_block_magnitude(eig, part)
    if off_block > part.epsilon_s:
        raise ValueError(
            f"Partition is not block-diagonal for this coupling: off-block entry {off_block:.3e} > {part.epsilon_s:.3e}"
        )
    return permuted


def max_off_block_magnitude(eig: EigenSystem, part: SubspacePartition) -> float:
    magnitude = np.abs(eig.coupling_in_eigenbasis)
    outside = magnitude[~part.same_block_mask()]
    return float(outside.max()) if outside.size else 0.0


def is_minimal(eig: EigenSystem, part: SubspacePartition) -> bool:
    """True when no block can be split without cutting a coupling above epsilon_s."""
    graph = coupling_graph(eig, part.epsilon_s)
    return all(nx.is_connected(graph.subgraph(block)) for block in part.blocks)


def relabel(part: SubspacePartition, labels) -> list[list[int]]:
    """
    Expresses the blocks in eigenstate labels, canonically ordered.

    Args:
        part (SubspacePartition): The partition.
        labels: One label per eigenstate index.

    Returns:
        list: Blocks of labels, each ascending, sorted by smallest label.
    """
    relabelled = [sorted(int(labels[i]) for i in block) for block in part.blocks]
    return sorted(relabelled, key=lambda block: block[0])


def partition_report(eig: EigenSystem, part: SubspacePartition) -> dict:
    """
    Partition report with 1-based indices.
    """
    report = {
        "blocks": [[i + 1 for i in block] for block in part.blocks],
        "block_sizes": list(part.block_sizes),
        "permutation": [i + 1 for i in part.permutation],
        "epsilon_s": part.epsilon_s,
        "max_off_block_magnitude": max_off_block_magnitude(eig, part),
    }
    if eig.labels is not None:
        report["labelled_blocks"] = relabel(part, eig.labels)
    return report
