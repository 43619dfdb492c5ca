"""OWA-based minimum cost consensus.

The feasible region ``{x : kappa_owa(x) <= epsilon}`` is generally not
convex.  It is, however, squeezed between two mutual-consensus regions:

    {kappa_mutual <= delta_minus}  ⊆  {kappa_owa <= epsilon}  ⊆  {kappa_mutual <= delta_plus}

with ``delta_minus = min(eps / (1 - min(omega_1, omega_n)), 1)`` and
``delta_plus = min(2 eps, 1)``, both tight.  MCMC solves at these two radii
bracket the optimal cost, and :func:`ap_owamcc` interpolates between them.

Two exact solvers are provided as references: :func:`solve_symmetric_linear`
(uniform costs and importance weights, a single LP) and
:func:`solve_exact_enum` (any costs, one LP per ordering of the opinions).
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from ._ordered import solve_ordered
from .exceptions import InfeasibleError, PreconditionError, SizeGuardError, ValidationError
from .measures import diagnostics, kappa_mutual, kappa_owa, membership, owa
from .mcmc import solve_mcmc
from .validation import check_threshold, check_weights

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = 1e-12
EQUAL_KAPPA_TOL = 1e-12
DELTA_MARGIN = 1e-9
UNIFORM_TOL = 1e-9
MAX_ENUM_N = 9


@dataclass(frozen=True)
class DeltaBounds:
    delta_minus: float
    delta_plus: float


@dataclass
class ApproxResult:
    x: np.ndarray
    cost: float
    delta_star: float
    kappa_owa: float
    group_value: float
    iterations: int
    cost_lower: float
    cost_upper: float
    converged: bool
    trace: list = field(default_factory=list)


@dataclass
class ExactResult:
    x: np.ndarray
    cost: float
    ordering: tuple
    lps_solved: int
    kappa_owa: float = None
    group_value: float = None


@dataclass
class Solution:
    x: np.ndarray
    cost: float
    diagnostics: dict
    method: str
    meta: dict = field(default_factory=dict)


def delta_bounds(epsilon, omega):
    """Largest inscribed and smallest circumscribing mutual-consensus radii.

    ``omega[0]`` and ``omega[-1]`` are the weights the OWA operator gives to
    the largest and smallest opinion.
    """
    epsilon = check_threshold(epsilon, "epsilon")
    omega = check_weights(omega, "omega")
    if len(omega) < 2:
        raise PreconditionError("delta bounds need at least two opinions")
    extreme = min(omega[0], omega[-1])
    return DeltaBounds(
        delta_minus=float(min(epsilon / (1.0 - extreme), 1.0)),
        delta_plus=min(2.0 * epsilon, 1.0),
    )


def _is_feasible(x, omega, epsilon):
    return kappa_owa(x, omega) <= epsilon + FEASIBILITY_TOL


def cost_bounds(instance):
    """Bracket the optimal OWA-MCC cost: ``(lower, upper)``.

    The lower end is the MCMC cost at ``delta_plus``, the upper end the MCMC
    cost at ``delta_minus``.  If the original opinions already satisfy the
    consensus threshold both ends are zero.
    """
    o, c, omega, eps = instance.o, instance.c, instance.omega, instance.epsilon
    if _is_feasible(o, omega, eps):
        return 0.0, 0.0
    db = delta_bounds(eps, omega)
    lower = solve_mcmc(o, c, db.delta_plus).cost
    upper = solve_mcmc(o, c, db.delta_minus).cost
    return lower, upper


def ap_owamcc(instance, max_iters=10, tau=0.01, nested=True, safeguard="illinois"):
    """Approximate OWA-MCC by interpolating the mutual-consensus radius.

    Starting from the bracketing radii, each step estimates the radius at
    which the OWA consensus of the MCMC optimum crosses ``epsilon`` by linear
    interpolation, solves MCMC there, and replaces whichever end of the
    bracket lies on the same side.  The lower end is always feasible and is
    what gets returned.

    Parameters
    ----------
    instance : Instance
    max_iters : int
        Maximum number of interpolation steps.
    tau : float
        Stop once the feasible end's OWA consensus is within ``tau`` of
        ``epsilon``.
    nested : bool
        Restrict every MCMC solve below ``delta_plus`` to the clamp interval
        of the current upper-end solution, so successive optima are nested
        and the OWA consensus is monotone in the radius.  Disable to run the
        bare interpolation.
    safeguard : {"illinois", None}
        Plain false-position steps stall when the consensus curve is concave
        near the crossing: the same bracket end is replaced forever and the
        feasible end never moves off ``delta_minus``.  With ``"illinois"``
        the residual of an end that survives two steps in a row is halved
        before the next interpolation.  ``None`` keeps the plain update.
    """
    if safeguard not in ("illinois", None):
        raise ValidationError(f"unknown safeguard {safeguard!r}")
    eps = instance.epsilon
    if not 0.0 <= eps <= 1.0:
        raise ValidationError(f"epsilon = {eps:g} is outside [0, 1]")
    if max_iters < 1:
        raise ValidationError("max_iters must be at least 1")
    if not tau > 0:
        raise ValidationError("tau must be positive")
    if not 0.0 < eps < 0.5:
        logger.warning("epsilon = %g is outside (0, 1/2); bracketing may be trivial", eps)

    o, c, omega = instance.o, instance.c, instance.omega
    if _is_feasible(o, omega, eps):
        return ApproxResult(
            x=o.copy(), cost=0.0, delta_star=kappa_mutual(o),
            kappa_owa=kappa_owa(o, omega), group_value=owa(omega, o),
            iterations=0, cost_lower=0.0, cost_upper=0.0, converged=True,
        )

    db = delta_bounds(eps, omega)
    d_lo, d_hi = db.delta_minus, db.delta_plus
    plus = solve_mcmc(o, c, d_hi)
    minus = solve_mcmc(o, c, d_lo, window=plus.interval if nested else None)
    cost_lower, cost_upper = plus.cost, minus.cost
    k_lo = kappa_owa(minus.x, omega)
    k_hi = kappa_owa(plus.x, omega)
    trace = [(float(d_lo), k_lo), (float(d_hi), k_hi)]

    # residuals used for interpolation; differ from k - eps only under the safeguard
    r_lo, r_hi = k_lo - eps, k_hi - eps
    last_moved = None
    iterations = 0
    converged = abs(k_lo - eps) <= tau
    while iterations < max_iters and not converged:
        if k_hi - k_lo < EQUAL_KAPPA_TOL:
            # both ends give the same consensus, so the upper end is optimal
            if k_hi <= eps + FEASIBILITY_TOL:
                minus, d_lo, k_lo = plus, d_hi, k_hi
            converged = True
            break
        d = -r_lo / (r_hi - r_lo) * (d_hi - d_lo) + d_lo
        if d_hi - d_lo > 2 * DELTA_MARGIN:
            d = min(max(d, d_lo + DELTA_MARGIN), d_hi - DELTA_MARGIN)
        res = solve_mcmc(o, c, d, window=plus.interval if nested else None)
        k = kappa_owa(res.x, omega)
        trace.append((float(d), k))
        iterations += 1
        if k <= eps + FEASIBILITY_TOL:
            minus, d_lo, k_lo, r_lo = res, d, k, k - eps
            if safeguard and last_moved == "lo":
                r_hi /= 2
            last_moved = "lo"
        else:
            plus, d_hi, k_hi, r_hi = res, d, k, k - eps
            if safeguard and last_moved == "hi":
                r_lo /= 2
            last_moved = "hi"
        converged = abs(k_lo - eps) <= tau

    return ApproxResult(
        x=minus.x,
        cost=minus.cost,
        delta_star=float(d_lo),
        kappa_owa=k_lo,
        group_value=owa(omega, minus.x),
        iterations=iterations,
        cost_lower=cost_lower,
        cost_upper=cost_upper,
        converged=converged,
        trace=trace,
    )


def _is_uniform(v):
    return np.max(np.abs(v - 1.0 / len(v))) <= UNIFORM_TOL


def _thresholds(instance):
    return dict(
        epsilon=instance.epsilon,
        delta=instance.delta,
        gamma1=instance.gamma1,
        gamma2=instance.gamma2,
    )


def solve_symmetric_linear(instance):
    """Exact OWA-MCC (with any optional thresholds) for symmetric instances.

    With uniform costs and uniform importance weights the feasible region is
    symmetric, so some optimum keeps the order of the original opinions.
    Fixing that order makes every constraint linear and one LP suffices.
    """
    c, w = instance.c, instance.w
    if not _is_uniform(c):
        raise PreconditionError("symmetric solver needs uniform costs (1/n each)")
    if not _is_uniform(w):
        raise PreconditionError("symmetric solver needs uniform importance weights")
    o, omega = instance.o, instance.omega
    order = np.argsort(-o, kind="stable")
    y, sol = solve_ordered(o[order], c[order], omega=omega, w=w[order], **_thresholds(instance))
    if y is None:
        raise InfeasibleError(f"symmetric LP is {sol.status}")
    x = np.empty_like(y)
    x[order] = y
    return Solution(
        x=x,
        cost=float(c @ np.abs(x - o)),
        diagnostics=diagnostics(x, instance),
        method="symmetric-linear",
        meta={"lp_iterations": sol.iterations, "pivot_rule": sol.pivot_rule},
    )


def _distinct_orderings(keys):
    """Permutations of ``range(n)`` in lexicographic order, one per class of
    equivalent orderings.

    Indices with equal keys are interchangeable, so only orderings that list
    them in increasing index order are kept.
    """
    n = len(keys)
    twins = [
        (i, j) for i in range(n) for j in range(i + 1, n) if keys[i] == keys[j]
    ]
    for perm in itertools.permutations(range(n)):
        if twins:
            pos = [0] * n
            for k, idx in enumerate(perm):
                pos[idx] = k
            if any(pos[i] > pos[j] for i, j in twins):
                continue
        yield perm


def solve_exact_enum(instance):
    """Global OWA-MCC optimum by enumerating the orderings of the solution.

    For each ordering the OWA aggregate is linear and the problem is an LP;
    the union of all ordering cones is the whole cube, so the best of these
    LPs is the global optimum.  Ties go to the lexicographically smallest
    ordering.  Limited to ``n <= 9``.
    """
    n = instance.n
    if n > MAX_ENUM_N:
        raise SizeGuardError(f"exact enumeration is limited to n <= {MAX_ENUM_N}, got {n}")
    o, c, w, omega = instance.o, instance.c, instance.w, instance.omega
    thresholds = _thresholds(instance)
    if all(membership(o, instance).values()):
        order = tuple(int(i) for i in np.argsort(-o, kind="stable"))
        return ExactResult(o.copy(), 0.0, order, 0, kappa_owa(o, omega), owa(omega, o))

    keys = list(zip(instance.opinions, instance.costs, w.tolist()))
    best = None
    solved = 0
    for perm in _distinct_orderings(keys):
        idx = np.array(perm)
        y, sol = solve_ordered(o[idx], c[idx], omega=omega, w=w[idx], **thresholds)
        solved += 1
        if y is None:
            continue
        val = float(c[idx] @ np.abs(y - o[idx]))
        if best is None or val < best[0] - 1e-12:
            x = np.empty_like(y)
            x[idx] = y
            best = (val, x, perm)
    if best is None:
        raise InfeasibleError("no ordering admits a feasible point")
    val, x, perm = best
    return ExactResult(
        x=x, cost=val, ordering=tuple(perm), lps_solved=solved,
        kappa_owa=kappa_owa(x, omega), group_value=owa(omega, x),
    )
