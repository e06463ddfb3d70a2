"""Instance-independent swap networks on a line of qubits."""

from .core import (
    AcquaintOp,
    CostModel,
    CostSummary,
    GateSet,
    Layer,
    LineLayout,
    SwapNetwork,
    SwapOp,
    apply_layer,
    complete_gateset,
    cost,
    decompose,
    net_permutation,
    network_from_json,
    network_to_json,
    qaoa_gateset,
    schedule_gates,
    swap_count,
    swap_depth,
    track,
)
from .complete import alt_three_local, k_complete, three_complete
from .primitives import (
    Bipartition,
    Partition,
    bipartite_network,
    canonical_2ccl,
    canonical_partition_network,
    decompose_generalized_swap,
    route_permutation,
)

__version__ = "0.1.0"
