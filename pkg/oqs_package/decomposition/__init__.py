# oqs_package/decomposition/__init__.py
from .partition import (
    SubspacePartition,
    coupling_graph,
    invariant_partition,
    block_permuted_coupling,
    partition_report,
    relabel,
)
