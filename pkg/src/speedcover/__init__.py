"""speedcover: joint optimization of middle-mile trucking cost and the number
of unique items deliverable within one day (speed-coverage).

Core pieces: an exact bitset coverage oracle, a concave piecewise-linear
interpolation of coverage over sampled 0/1 activation vectors, a top-k
sampling heuristic that shrinks the vertex set, MILP builders for the
cost-only and joint models, and a deterministic simplex/branch-and-bound
engine with brute-force oracles for validation.
"""

from .coverage import InventoryMatrix, SpeedAssignment, coverage, individual_coverage, rank_origins
from .instance import (
    GenerationParams,
    Instance,
    generate_random,
    load,
    save,
    validate,
)
from .sampling import SamplePoint, SampleSet, build_samples, sample_count_bound
from .closure import ClosureQuery, ClosureValue, closure_exactness_check, evaluate_closure
from .model import MilpModel, build_cost_model, build_speed_aware_model
from .mps import export_mps, load_mps, parse_mps, structurally_equal, write_mps
from .solver import SolveOptions, SolveResult, check_solution, solve_lp, solve_milp
from .bruteforce import EnumerationResult, enumerate_p2, full_vertex_closure
from .experiments import ExperimentReport, ReportRow, run_gamma_sweep, run_kappa_sweep

__version__ = "0.1.0"

__all__ = [
    "InventoryMatrix",
    "SpeedAssignment",
    "coverage",
    "individual_coverage",
    "rank_origins",
    "GenerationParams",
    "Instance",
    "generate_random",
    "load",
    "save",
    "validate",
    "SamplePoint",
    "SampleSet",
    "build_samples",
    "sample_count_bound",
    "ClosureQuery",
    "ClosureValue",
    "closure_exactness_check",
    "evaluate_closure",
    "MilpModel",
    "build_cost_model",
    "build_speed_aware_model",
    "export_mps",
    "load_mps",
    "parse_mps",
    "structurally_equal",
    "write_mps",
    "SolveOptions",
    "SolveResult",
    "check_solution",
    "solve_lp",
    "solve_milp",
    "EnumerationResult",
    "enumerate_p2",
    "full_vertex_closure",
    "ExperimentReport",
    "ReportRow",
    "run_gamma_sweep",
    "run_kappa_sweep",
    "__version__",
]
