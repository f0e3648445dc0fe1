"""Synchronous self-learning Pareto strategy (SSLPSA), an NSGA-II baseline, ZDT/SCH/FON benchmarks and front metrics."""

from .archive import Archive
from .core import ControlParams, RngStream, Solution, StructuralError, clamp_to_bounds, nsga2_params, split_counts
from .dominance import crowded_compare, crowding_distance, dominates, fast_nondominated_sort
from .engine import RunResult, collection_site_merge, run_nsga2, run_sslpsa
from .metrics import aggregate, delta, gamma, igd, spread
from .problems import PROBLEMS, ProblemSpec, evaluate, get_problem, true_front_sample

__all__ = [
    "Archive", "ControlParams", "RngStream", "Solution", "StructuralError", "clamp_to_bounds",
    "nsga2_params", "split_counts", "crowded_compare", "crowding_distance", "dominates",
    "fast_nondominated_sort", "RunResult", "collection_site_merge", "run_nsga2", "run_sslpsa",
    "aggregate", "delta", "gamma", "igd", "spread", "PROBLEMS", "ProblemSpec", "evaluate",
    "get_problem", "true_front_sample",
]
