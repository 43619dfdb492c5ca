"""Randomized comparison of the approximation against an exact reference.

Each trial draws opinions uniformly from [0, 1]^n, OWA weights as n uniform
draws divided by their sum, and costs either uniform (1/n) or drawn the same
way as the weights.  Trial ``t`` of a run seeded with ``s`` uses its own
PCG64 stream built from ``SeedSequence([s, t])``, so results do not depend
on how trials are spread over workers.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .exceptions import SizeGuardError, ValidationError
from .measures import MEMBERSHIP_TOL, Instance, REGIONS, kappa_pairwise
from .owamcc import MAX_ENUM_N, ap_owamcc, solve_exact_enum, solve_symmetric_linear

MODES = ("symmetric-linear", "exact-enum")
COST_MODES = ("uniform", "random")
REPORT_COLUMNS = ("trial", "cost_gap", "ap_time_ms", "reference_time_ms", "converged", "feasible")
NUMERIC_COLUMNS = ("cost_gap", "ap_time_ms", "reference_time_ms")


@dataclass(frozen=True)
class SimulationConfig:
    n: int
    trials: int = 100
    epsilon: float = 0.15
    seed: int = 0
    mode: str = "symmetric-linear"
    cost_mode: str = "uniform"
    max_iters: int = 10
    tau: float = 0.01

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError("n must be at least 2")
        if self.trials < 1:
            raise ValidationError("trials must be at least 1")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValidationError("epsilon must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        if self.cost_mode not in COST_MODES:
            raise ValidationError(f"cost_mode must be one of {COST_MODES}")
        if self.mode == "symmetric-linear" and self.cost_mode != "uniform":
            raise ValidationError("symmetric-linear reference needs uniform costs")
        if self.mode == "exact-enum" and self.n > MAX_ENUM_N:
            raise SizeGuardError(f"exact-enum mode is limited to n <= {MAX_ENUM_N}")


@dataclass
class TrialRecord:
    trial: int
    cost_gap: float
    ap_cost: float
    reference_cost: float
    ap_time_ms: float
    reference_time_ms: float
    converged: bool
    feasible: bool


@dataclass
class SimulationReport:
    config: SimulationConfig
    records: list
    aggregates: dict = field(default_factory=dict)

    def rows(self):
        return [asdict(r) for r in self.records]

    def to_dict(self):
        return {
            "config": asdict(self.config),
            "aggregates": self.aggregates,
            "records": self.rows(),
        }

    def deterministic_view(self):
        """Everything except wall-clock timings."""
        skip = {"ap_time_ms", "reference_time_ms"}
        return [
            tuple((k, v) for k, v in asdict(r).items() if k not in skip)
            for r in self.records
        ]


def trial_rng(seed, trial):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def draw_instance(config, trial):
    rng = trial_rng(config.seed, trial)
    n = config.n
    o = rng.random(n)
    omega = rng.random(n)
    omega = omega / omega.sum()
    if config.cost_mode == "uniform":
        c = np.full(n, 1.0 / n)
    else:
        c = rng.random(n)
        c = c / c.sum()
    return Instance(tuple(o), tuple(c), tuple(omega), config.epsilon)


def run_trial(config, trial):
    inst = draw_instance(config, trial)
    t0 = time.perf_counter()
    ap = ap_owamcc(inst, max_iters=config.max_iters, tau=config.tau)
    t1 = time.perf_counter()
    if config.mode == "symmetric-linear":
        ref_cost = solve_symmetric_linear(inst).cost
    else:
        ref_cost = solve_exact_enum(inst).cost
    t2 = time.perf_counter()
    return TrialRecord(
        trial=trial,
        cost_gap=ap.cost - ref_cost,
        ap_cost=ap.cost,
        reference_cost=ref_cost,
        ap_time_ms=(t1 - t0) * 1e3,
        reference_time_ms=(t2 - t1) * 1e3,
        converged=bool(ap.converged),
        feasible=bool(ap.kappa_owa <= config.epsilon + MEMBERSHIP_TOL),
    )


def _run_trial_args(args):
    return run_trial(*args)


def aggregate(records):
    out = {}
    for col in NUMERIC_COLUMNS:
        vals = np.array([getattr(r, col) for r in records])
        std = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
        out[col] = {"mean": float(vals.mean()), "std": std}
    return out


def run_simulation(config, n_jobs=1):
    """Run every trial of ``config``; ``n_jobs > 1`` spreads them over processes."""
    jobs = [(config, t) for t in range(config.trials)]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            records = list(pool.map(_run_trial_args, jobs))
    else:
        records = [run_trial(*job) for job in jobs]
    records.sort(key=lambda r: r.trial)
    return SimulationReport(config, records, aggregate(records))


def _owa_rows(X, omega):
    return np.sort(X, axis=1)[:, ::-1] @ omega


def region_measure(X, instance, region):
    """Vectorized measure of each row of ``X`` for one named region."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if region == "delta":
        return X.max(axis=1) - X.min(axis=1)
    omega = instance.omega
    if region == "epsilon":
        g = _owa_rows(X, omega)
        return np.max(np.abs(X - g[:, None]), axis=1)
    if region == "gamma1":
        g = _owa_rows(X, omega)
        return np.abs(X - g[:, None]) @ instance.w
    if region == "gamma2":
        return np.array([kappa_pairwise(x, instance.w) for x in X])
    raise ValidationError(f"unknown region {region!r}; expected one of {REGIONS}")


def sample_region(instance, region, count, seed=0):
    """Uniform points of [0, 1]^n labeled by membership in ``region``.

    Returns ``(points, inside)``.
    """
    if region not in REGIONS:
        raise ValidationError(f"unknown region {region!r}; expected one of {REGIONS}")
    threshold = getattr(instance, region)
    if threshold is None:
        raise ValidationError(f"instance sets no {region} threshold")
    if count < 1:
        raise ValidationError("count must be positive")
    rng = trial_rng(seed, 0)
    X = rng.random((count, instance.n))
    inside = region_measure(X, instance, region) <= threshold + MEMBERSHIP_TOL
    return X, inside


def point_rows(X, inside):
    n = X.shape[1]
    rows = []
    for x, flag in zip(X, inside):
        row = {f"x{k + 1}": float(v) for k, v in enumerate(x)}
        row["inside"] = int(flag)
        rows.append(row)
    return rows, [f"x{k + 1}" for k in range(n)] + ["inside"]
