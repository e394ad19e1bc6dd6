"""Fault-tolerant sparse subgraphs for min-cost arborescences, and
fault-tolerant preservers for min-cost matroid bases."""

from .arborescence import (
    Arborescence,
    Infeasible,
    brute_force_arborescence,
    min_cost_arborescence,
    validate_arborescence,
)
from .charging import (
    check_charge_bound,
    check_disjoint_uniqueness,
    check_size_bound,
    color_edges,
    compute_charges,
)
from .eft import EftSubgraph, build_eft_subgraph, partition, replacement_path
from .faults import certify, query_fault, sweep_all_faults
from .ftp import build_ftp, lower_bound_multigraph, simulate_failure_cascade, verify_ftp
from .generate import gen_random_graph
from .graph import Graph, PathKey, load_graph, perturb_costs, reverse, shortest_path
from .matroid import (
    ExplicitMatroid,
    GraphicMatroid,
    PartitionMatroid,
    UniformMatroid,
    find_swap_element,
    greedy_min_cost_basis,
    in_span,
    rank,
)

__version__ = "0.1.0"
