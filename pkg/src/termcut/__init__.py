"""Terminal cut functions of capacitated graphs.

Exact (rational) evaluation of terminal min-cuts, certificates for laminar
cut inequalities, the packing LP with uncrossing, and the terminal
approximate min-cut count.
"""
from .certificate import (
    EdgeLengths,
    LengthDecomposition,
    accumulate_lengths,
    build_length_decomposition,
    edge_region_intervals,
    shortest_distances,
    verify_decomposition,
    verify_theorem1,
)
from .conditions import (
    check_complement_symmetry,
    check_pair_inequality,
    check_submodularity,
    enumerate_maximal_laminar,
    full_report,
    most_violated_laminar,
)
from .duality import build_dual, build_primal, uncross_step, uncross_to_laminar
from .errors import DegenerateInstanceError, InvalidInputError, ResourceLimitError, TermcutError
from .graph import (
    CutResult,
    Graph,
    brute_force_cut,
    combine_realizations,
    cut_vector,
    max_flow_min_cut,
    min_terminal_cut,
    parse_graph,
    terminal_cut,
)
from .karger import SpanningTree, mst, sets_cutting_exactly, theorem2_chain, tree_cut_edges, verify_karger_bound
from .simplex import LPProblem, LPSolution, solve_lp
from .typevec import LaminarFamily, TerminalMetric, TypeVector, dominates, induced_metric, is_laminar, weighted_cut

__version__ = "0.1.0"
