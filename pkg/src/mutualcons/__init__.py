"""Minimum cost consensus under mutual and OWA-based consensus measures."""

from .estimators import MutualConsensus, OWAConsensus
from .exceptions import (
    ConsensusError,
    DimensionError,
    InfeasibleError,
    PreconditionError,
    SizeGuardError,
    SolverError,
    ValidationError,
)
from .io import load_instance, write_instance
from .lp import LpProblem, LpSolution, solve_lp
from .mcmc import McmcResult, cost, solve_mcmc, solve_mcmc_lp
from .measures import (
    Aggregator,
    Instance,
    diagnostics,
    kappa_max_dev,
    kappa_mutual,
    kappa_owa,
    kappa_pairwise,
    kappa_weighted_dev,
    membership,
    owa,
)
from .owamcc import (
    ApproxResult,
    DeltaBounds,
    ExactResult,
    Solution,
    ap_owamcc,
    cost_bounds,
    delta_bounds,
    solve_exact_enum,
    solve_symmetric_linear,
)
from .simulation import SimulationConfig, SimulationReport, run_simulation, sample_region
from .validation import normalized_from

__all__ = [
    "Aggregator", "ApproxResult", "ConsensusError", "DeltaBounds", "DimensionError",
    "ExactResult", "InfeasibleError", "Instance", "LpProblem", "LpSolution", "McmcResult",
    "MutualConsensus", "OWAConsensus", "PreconditionError", "SimulationConfig",
    "SimulationReport", "SizeGuardError", "Solution", "SolverError", "ValidationError",
    "ap_owamcc", "cost", "cost_bounds", "delta_bounds", "diagnostics", "kappa_max_dev",
    "kappa_mutual", "kappa_owa", "kappa_pairwise", "kappa_weighted_dev", "load_instance",
    "membership", "normalized_from", "owa", "run_simulation", "sample_region",
    "solve_exact_enum", "solve_lp", "solve_mcmc", "solve_mcmc_lp", "solve_symmetric_linear",
    "write_instance",
]
