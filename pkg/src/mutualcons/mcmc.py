"""Minimum cost with mutual consensus (MCMC).

Find the cheapest adjusted opinions ``x`` with ``max(x) - min(x) <= delta``.
Some optimum clamps every opinion into a single interval ``[a, a + delta]``,
so the problem collapses to minimizing the convex piecewise-linear function

    cost(a) = sum_i c_i * dist(o_i, [a, a + delta])

whose breakpoints are the ``o_i`` and ``o_i - delta``.  :func:`solve_mcmc`
evaluates every breakpoint; :func:`solve_mcmc_lp` solves the same problem
as an ordered LP and is kept as an independent cross-check.
"""

from dataclasses import dataclass

import numpy as np

from ._ordered import solve_ordered
from .exceptions import InfeasibleError, SolverError, ValidationError
from .validation import check_opinions, check_same_length, check_threshold, check_weights

# costs closer than this count as tied; ties go to the smallest a
TIE_TOL = 1e-14


@dataclass
class McmcResult:
    x: np.ndarray
    cost: float
    interval: tuple
    delta: float
    breakpoints_examined: int = 0
    method: str = "sweep"


def cost(o, c, x):
    """Weighted L1 distance ``sum_k c_k |x_k - o_k|``."""
    o = np.asarray(o, dtype=float)
    c = np.asarray(c, dtype=float)
    x = np.asarray(x, dtype=float)
    n = len(o)
    check_same_length(n, c, "c")
    check_same_length(n, x, "x")
    return float(c @ np.abs(x - o))


def _check_inputs(o, c, delta):
    o = check_opinions(o, "o")
    c = check_weights(c, "c", len(o))
    delta = check_threshold(delta, "delta")
    return o, c, delta


def solve_mcmc(o, c, delta, window=None):
    """Exact MCMC solve by a breakpoint sweep over the clamp interval.

    Parameters
    ----------
    o, c : array-like
        Opinions in [0, 1] and a normalized cost vector.
    delta : float
        Mutual consensus threshold.
    window : (lo, hi), optional
        Restrict every adjusted opinion to ``[lo, hi]``.  Used to pick, among
        the optima for a smaller ``delta``, one nested inside a known optimum
        for a larger ``delta``.

    Returns
    -------
    McmcResult
    """
    o, c, delta = _check_inputs(o, c, delta)
    if window is None:
        lo, hi = 0.0, 1.0
    else:
        lo, hi = (float(v) for v in window)
        if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
            raise ValidationError(f"window {window!r} is not inside [0, 1]")
        if lo > hi:
            raise InfeasibleError(f"empty window [{lo}, {hi}]")

    width = min(delta, hi - lo)
    a_min, a_max = lo, max(lo, hi - width)
    cand = np.concatenate([o, o - width, [a_min, a_max]])
    cand = np.unique(cand[(cand >= a_min) & (cand <= a_max)])

    X = np.clip(o[None, :], cand[:, None], cand[:, None] + width)
    costs = np.abs(X - o[None, :]) @ c
    best = costs.min()
    k = int(np.flatnonzero(costs <= best + TIE_TOL)[0])
    a = float(cand[k])
    b = a + width
    x = np.clip(o, a, b)
    return McmcResult(
        x=x,
        cost=float(c @ np.abs(x - o)),
        interval=(a, b),
        delta=delta,
        breakpoints_examined=len(cand),
    )


def solve_mcmc_lp(o, c, delta):
    """MCMC through the sorted LP reformulation.

    Opinions are put in decreasing order, the LP imposes that order on the
    adjusted vector together with ``x_1 - x_n <= delta``, and the result is
    permuted back.
    """
    o, c, delta = _check_inputs(o, c, delta)
    order = np.argsort(-o, kind="stable")
    y, sol = solve_ordered(o[order], c[order], delta=delta)
    if y is None:
        # the unadjusted-extremes clamp is always feasible, so this is a solver bug
        raise SolverError(f"MCMC LP reported {sol.status!r}")
    x = np.empty_like(y)
    x[order] = y
    return McmcResult(
        x=x,
        cost=float(c @ np.abs(x - o)),
        interval=(float(x.min()), float(x.max())),
        delta=delta,
        breakpoints_examined=0,
        method="lp",
    )
