"""Minimum-cost k-node-connectivity augmentation with exact rational arithmetic."""

from .errors import (
    BudgetExceeded, GuaranteeViolated, Infeasible, KaugError, RegimeViolation, RestartBudgetExceeded,
)
from .graph import Graph, edge, find_deficient_pair, is_k_connected, min_vertex_cut, vertex_cut
from .instance import Instance, Solution, gen_random, read_instance, write_instance
from .lp import LPVCSolver, separate, solve_lpvc
from .oracle import OracleResult, exact_opt
from .outconnect import Digraph, rooted, solve_directed_outconnectivity
from .pipeline import PipelineReport, augment, verify
from .rogue import compute_B, enumerate_rogue_sets, is_rogue_free, min_h_containing
from .rounding import RoundingOutcome, iterative_round
from .setpairs import SetPair, classify, deficiency, meeting_points, uncross

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "Digraph", "Graph", "GuaranteeViolated", "Infeasible", "Instance",
    "KaugError", "LPVCSolver", "OracleResult", "PipelineReport", "RegimeViolation",
    "RestartBudgetExceeded", "RoundingOutcome", "SetPair", "Solution", "augment", "classify",
    "compute_B", "deficiency", "edge", "enumerate_rogue_sets", "exact_opt", "find_deficient_pair",
    "gen_random", "is_k_connected", "is_rogue_free", "iterative_round", "meeting_points",
    "min_h_containing", "min_vertex_cut", "read_instance", "rooted", "separate", "solve_lpvc",
    "solve_directed_outconnectivity", "uncross", "verify", "vertex_cut", "write_instance",
]
