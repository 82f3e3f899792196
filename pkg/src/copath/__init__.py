"""Randomized k-co-path set decision via tree-decomposition Cut&Count."""

from .branch import ReducedInstance, deg_branch, leaf_bound
from .cutcount import WeightAssignment, run_dp, sample_weights, tw_copath_decide
from .graph import Graph, GraphFormatError, is_linear_forest, parse_graph, read_graph
from .kernel import KernelResult, kernelize
from .oracle import brute_force_decide
from .pipeline import Decision, SolverConfig, all_k_spectrum, copath_decide
from .treedecomp import NiceTreeDecomposition, greedy_decomposition, make_nice, nice_decomposition

__all__ = [
    "Decision", "Graph", "GraphFormatError", "KernelResult", "NiceTreeDecomposition",
    "ReducedInstance", "SolverConfig", "WeightAssignment", "all_k_spectrum",
    "brute_force_decide", "copath_decide", "deg_branch", "greedy_decomposition",
    "is_linear_forest", "kernelize", "leaf_bound", "make_nice", "nice_decomposition",
    "parse_graph", "read_graph", "run_dp", "sample_weights", "tw_copath_decide",
]
