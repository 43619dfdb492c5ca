"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import itertools
import time

import numpy as np
import pytest

from mutualcons import (
    Aggregator,
    Instance,
    SimulationConfig,
    ap_owamcc,
    cost_bounds,
    delta_bounds,
    kappa_max_dev,
    kappa_mutual,
    kappa_owa,
    kappa_pairwise,
    kappa_weighted_dev,
    membership,
    run_simulation,
    solve_exact_enum,
    solve_mcmc,
    solve_mcmc_lp,
    solve_symmetric_linear,
)
from mutualcons.simulation import region_measure

from conftest import ACCEPTANCE_LINES

SEED = 0
SAMPLES = 10_000


def report(name, checks):
    """``checks`` maps a description to ``(ok, detail)``."""
    ok = all(c[0] for c in checks.values())
    parts = "; ".join(f"{k}: {d}{'' if c else ' [FAIL]'}" for k, (c, d) in checks.items())
    line = f"{'PASS' if ok else 'FAIL'}  {name}  ({parts})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    failed = [k for k, (c, _) in checks.items() if not c]
    assert ok, f"{name}: failed {failed}"


def within(value, target, tol):
    return abs(value - target) <= tol, f"{value:.6g} vs {target} ± {tol}"


def test_criterion_1_example1(example1):
    t0 = time.perf_counter()
    res = ap_owamcc(example1, max_iters=10, tau=0.01)
    lower, upper = cost_bounds(example1)
    elapsed = time.perf_counter() - t0
    dx = float(np.max(np.abs(res.x - np.array((0.1, 0.1, 0.25, 0.3, 0.4333)))))
    report("1 Example 1 golden", {
        "cost": within(res.cost, 0.0256, 0.002),
        "x": (dx <= 0.002, f"max |dx| {dx:.2e} <= 0.002"),
        "group value": within(res.group_value, 0.3, 1e-6),
        "lower bound": within(lower, 0.01667, 1e-4),
        "upper bound": within(upper, 0.03952, 1e-4),
        "runtime": (elapsed < 1.0, f"{elapsed * 1e3:.1f} ms < 1 s"),
    })


def test_criterion_2_example2(example2):
    approx = ap_owamcc(example2, max_iters=10, tau=0.01)
    t0 = time.perf_counter()
    exact = solve_exact_enum(example2)
    elapsed = time.perf_counter() - t0
    k = kappa_owa(exact.x, example2.omega)
    report("2 Example 2 golden", {
        "approx cost": within(approx.cost, 0.1653, 0.005),
        "approx in bounds": (0.1516 <= approx.cost <= 0.1954, f"{approx.cost:.6g} in [0.1516, 0.1954]"),
        "exact cost": within(exact.cost, 0.1537, 0.001),
        "exact feasible": (k <= 0.1 + 1e-8, f"kappa_owa {k:.10g} <= 0.1 + 1e-8"),
        "exact runtime": (elapsed < 300, f"{elapsed:.1f} s < 300 s"),
    })


@pytest.fixture(scope="module")
def table1():
    return {
        n: run_simulation(SimulationConfig(
            n=n, trials=100, epsilon=0.15, seed=SEED, mode="exact-enum", cost_mode="random"))
        for n in (4, 6)
    }


@pytest.mark.slow
def test_criterion_3_small_groups(table1):
    checks = {}
    for n, rep in table1.items():
        gaps = np.array([r.cost_gap for r in rep.records])
        checks[f"n={n} mean gap"] = (gaps.mean() <= 0.03,
                                     f"{gaps.mean():.4f} ± {gaps.std(ddof=1):.4f} <= 0.03")
        checks[f"n={n} min gap"] = (gaps.min() >= -1e-7, f"{gaps.min():.2e} >= -1e-7")
        feas = all(r.feasible for r in rep.records)
        checks[f"n={n} feasible"] = (feas, "all trials feasible")
    report("3 exact-enum statistics", checks)


@pytest.fixture(scope="module")
def table2():
    out = {}
    for n in (40, 200, 500):
        t0 = time.perf_counter()
        rep = run_simulation(SimulationConfig(
            n=n, trials=100, epsilon=0.15, seed=SEED, mode="symmetric-linear",
            cost_mode="uniform"))
        out[n] = (rep, time.perf_counter() - t0)
    return out


@pytest.mark.slow
def test_criterion_4_large_group_trend(table2):
    means = {n: rep.aggregates["cost_gap"]["mean"] for n, (rep, _) in table2.items()}
    bars = {40: 0.01, 200: 0.005, 500: 0.002}
    checks = {
        "decreasing": (means[40] > means[200] > means[500],
                       " > ".join(f"{means[n]:.4f}" for n in (40, 200, 500))),
    }
    for n, bar in bars.items():
        checks[f"n={n}"] = (means[n] <= bar, f"{means[n]:.5f} <= {bar}")
    elapsed = table2[500][1]
    checks["n=500 runtime"] = (elapsed < 300, f"{elapsed:.0f} s < 300 s")
    checks["gaps >= -1e-7"] = (
        all(r.cost_gap >= -1e-7 for rep, _ in table2.values() for r in rep.records), "all trials")
    report("4 symmetric-linear trend", checks)


def test_criterion_5_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    worst_mcmc = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        o, c = rng.random(n), rng.random(n)
        c /= c.sum()
        delta = float(rng.random())
        worst_mcmc = max(worst_mcmc, abs(solve_mcmc(o, c, delta).cost
                                         - solve_mcmc_lp(o, c, delta).cost))
    worst_sym = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        omega = rng.random(n)
        inst = Instance(tuple(rng.random(n)), (1 / n,) * n, tuple(omega / omega.sum()),
                        float(rng.uniform(0.02, 0.3)))
        worst_sym = max(worst_sym, abs(solve_symmetric_linear(inst).cost
                                       - solve_exact_enum(inst).cost))
    report("5 oracle equivalence", {
        "sweep vs LP (1000)": (worst_mcmc <= 1e-7, f"max diff {worst_mcmc:.1e}"),
        "symmetric vs enum (200)": (worst_sym <= 1e-7, f"max diff {worst_sym:.1e}"),
    })


def _random_weights(rng, n):
    w = rng.random(n)
    return w / w.sum()


def _containment(rng):
    bad = 0
    for _ in range(SAMPLES):
        n = int(rng.integers(2, 10))
        x = rng.random(n) * rng.random()
        x += rng.random() * (1 - x.max())
        alpha = kappa_mutual(x)
        omega, w, v = (_random_weights(rng, n) for _ in range(3))
        for phi in (Aggregator.arithmetic_mean(), Aggregator.weighted_mean(v), Aggregator.owa(omega)):
            bad += kappa_max_dev(x, phi) > alpha + 1e-12
            bad += kappa_weighted_dev(x, w, phi) > alpha + 1e-12
        bad += kappa_pairwise(x, w) > alpha + 1e-12
    return bad


def _delta_containments(rng):
    bad = 0
    total = 0
    for _ in range(20):
        n = int(rng.integers(2, 12))
        omega = _random_weights(rng, n)
        eps = float(rng.uniform(0.01, 0.49))
        db = delta_bounds(eps, omega)
        inst = Instance((0.5,) * n, (1 / n,) * n, tuple(omega), eps)
        spread = rng.random((SAMPLES, 1))
        X = rng.random((SAMPLES, n)) * spread
        X += rng.random((SAMPLES, 1)) * (1 - X.max(axis=1, keepdims=True))
        k = region_measure(X, inst, "delta")
        k_owa = region_measure(X, inst, "epsilon")
        bad += int(np.sum((k <= db.delta_minus) & (k_owa > eps + 1e-12)))
        bad += int(np.sum((k_owa <= eps) & (k > db.delta_plus + 1e-12)))
        total += SAMPLES
    return bad, total


def _sharpness(rng):
    bad = 0
    for _ in range(500):
        n = int(rng.integers(3, 8))
        omega = _random_weights(rng, n)
        eps = float(rng.uniform(0.01, 0.45))
        db = delta_bounds(eps, omega)
        if db.delta_minus < 1:
            d = min(db.delta_minus * 1.001, 1.0)
            V = np.array(list(itertools.product((0.0, d), repeat=n)))
            bad += max(kappa_owa(v, omega) for v in V) <= eps
        cum = np.cumsum(omega)
        k0 = int(np.argmax(cum >= 0.5))
        if 0 < k0 < n - 1:
            x = np.zeros(n)
            x[:k0] = 2 * eps
            x[k0] = eps * (1 - 2 * (cum[k0] - omega[k0])) / omega[k0]
            bad += kappa_owa(x, omega) > eps + 1e-12
            bad += abs(kappa_mutual(x) - 2 * eps) > 1e-12
    return bad


def _boundary(rng):
    bad = 0
    for _ in range(SAMPLES):
        n = int(rng.integers(2, 12))
        eps = float(rng.uniform(0.0, 0.5))
        alpha = float(rng.uniform(2 * eps, 1.0))
        r = rng.random(n)
        r[rng.integers(n)] = 0.0
        r[rng.integers(n)] = 1.0
        if r.max() == r.min():
            continue
        x = (r - r.min()) / (r.max() - r.min()) * alpha
        x += rng.random() * (1 - alpha)
        x = np.clip(x, 0, 1)
        bad += kappa_owa(x, _random_weights(rng, n)) < eps - 1e-12
    return bad


def _nonconvexity():
    inst = Instance((1, 0.5, 0), (1 / 3,) * 3, (0.25, 0.5, 0.25), 0.5)
    inside = [membership(p, inst)["epsilon"] for p in ((1, 0.5, 0), (1, 0, 0.5), (1, 0.25, 0.25))]
    return inside == [True, True, False]


def _shift_and_symmetry(rng):
    bad = 0
    for _ in range(SAMPLES):
        n = int(rng.integers(2, 10))
        x = rng.random(n)
        omega, w = _random_weights(rng, n), _random_weights(rng, n)
        phi = Aggregator.owa(omega)
        lam = rng.uniform(-x.min(), 1 - x.max())
        perm = rng.permutation(n)

        def measures(y, wy):
            return np.array([kappa_mutual(y), kappa_owa(y, omega),
                             kappa_weighted_dev(y, wy, phi), kappa_pairwise(y, wy)])

        base = measures(x, w)
        bad += np.max(np.abs(measures(x + lam, w) - base)) > 1e-12
        bad += np.max(np.abs(measures(x[perm], w[perm]) - base)) > 1e-12
    return bad


def _mcmc_structure(rng):
    bad = 0
    for _ in range(SAMPLES):
        n = int(rng.integers(1, 10))
        o, c = rng.random(n), _random_weights(rng, n)
        res = solve_mcmc(o, c, float(rng.random()))
        x = res.x
        lo, hi = x.min(), x.max()
        bad += not all(v == lo or v == hi or v == oi for v, oi in zip(x, o))
        bad += kappa_mutual(x) > res.delta + 1e-12
    return bad


def test_criterion_6_property_suites():
    rng = np.random.default_rng(SEED)
    contain_bad, contain_total = _delta_containments(rng)
    checks = {
        "mutual bounds others": (lambda b: (b == 0, f"{b} violations / {SAMPLES}"))(_containment(rng)),
        "delta containments": (contain_bad == 0, f"{contain_bad} violations / {contain_total}"),
        "sharpness witnesses": (lambda b: (b == 0, f"{b} violations / 500 configs"))(_sharpness(rng)),
        "boundary bound": (lambda b: (b == 0, f"{b} violations / {SAMPLES}"))(_boundary(rng)),
        "non-convexity triple": (_nonconvexity(), "in, in, out"),
        "shift/symmetry": (lambda b: (b == 0, f"{b} violations / {SAMPLES}"))(_shift_and_symmetry(rng)),
        "MCMC structure": (lambda b: (b == 0, f"{b} violations / {SAMPLES}"))(_mcmc_structure(rng)),
    }
    report("6 property suites", checks)


def test_criterion_7_determinism():
    cfgs = [
        SimulationConfig(n=30, trials=12, seed=SEED, mode="symmetric-linear"),
        SimulationConfig(n=5, trials=12, seed=SEED, mode="exact-enum", cost_mode="random"),
    ]
    checks = {}
    for cfg in cfgs:
        a = run_simulation(cfg, n_jobs=1).deterministic_view()
        b = run_simulation(cfg, n_jobs=2).deterministic_view()
        c = run_simulation(cfg, n_jobs=1).deterministic_view()
        same = repr(a) == repr(b) == repr(c)
        checks[cfg.mode] = (same, f"{cfg.trials} trials identical across 1/2/1 workers")
    report("7 determinism", checks)
