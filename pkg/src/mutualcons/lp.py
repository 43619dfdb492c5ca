"""Dense bounded-variable primal simplex.

Every LP built by the consensus solvers is small, dense and box-constrained,
so a tableau method with explicit lower/upper bound handling is enough.
Rows are turned into equalities with one *logical* variable per row,
``A x - r = 0``, where the bounds of ``r`` encode the relation and the
right-hand side.  Phase 1 adds artificials only for rows the starting point
violates.

Pricing is Dantzig's rule; after ``DEGENERATE_SWITCH`` consecutive
degenerate pivots the solver falls back to Bland's rule until the objective
strictly improves again, which rules out cycling.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError, SolverError, ValidationError

PIVOT_TOL = 1e-10
COST_TOL = 1e-9
FEAS_TOL = 1e-8
BOUND_TOL = 1e-10
DEGENERATE_SWITCH = 50
REFACTOR_EVERY = 100

LE, GE, EQ = "<=", ">=", "="


@dataclass
class LpProblem:
    """``min objective @ x`` s.t. ``A[i] @ x (ops[i]) rhs[i]``, ``lower <= x <= upper``."""

    objective: np.ndarray
    A: np.ndarray
    ops: list
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        nvar = len(self.objective)
        self.A = np.asarray(self.A, dtype=float).reshape(-1, nvar)
        self.rhs = np.asarray(self.rhs, dtype=float)
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        self.ops = list(self.ops)
        m = self.A.shape[0]
        if len(self.ops) != m or len(self.rhs) != m:
            raise DimensionError(
                f"{m} constraint rows but {len(self.ops)} ops and {len(self.rhs)} rhs"
            )
        if len(self.lower) != nvar or len(self.upper) != nvar:
            raise DimensionError("bounds must have one entry per variable")
        bad_ops = set(self.ops) - {LE, GE, EQ}
        if bad_ops:
            raise ValidationError(f"unknown constraint relation(s) {sorted(bad_ops)}")
        if not (np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper))):
            raise ValidationError("variable bounds must be finite")
        if np.any(self.lower > self.upper):
            raise ValidationError("lower bound exceeds upper bound")

    @property
    def shape(self):
        return self.A.shape


@dataclass
class LpSolution:
    status: str
    x: np.ndarray = None
    objective_value: float = None
    iterations: int = 0
    pivot_rule: str = "dantzig"
    meta: dict = field(default_factory=dict)

    @property
    def optimal(self):
        return self.status == "optimal"


class _Tableau:
    """Working state of one solve.  Columns: structurals, logicals, artificials."""

    def __init__(self, problem):
        A = problem.A
        m, nvar = A.shape
        self.m, self.nvar = m, nvar
        lo_r = np.full(m, -np.inf)
        up_r = np.full(m, np.inf)
        for i, op in enumerate(problem.ops):
            if op in (GE, EQ):
                lo_r[i] = problem.rhs[i]
            if op in (LE, EQ):
                up_r[i] = problem.rhs[i]

        x0 = problem.lower.copy()
        act = A @ x0
        # artificial a_i >= 0 with sign s_i absorbs the violation of row i
        viol = np.flatnonzero((act < lo_r - FEAS_TOL) | (act > up_r + FEAS_TOL))
        n_art = len(viol)
        self.n_art = n_art
        ntot = nvar + m + n_art
        M = np.zeros((m, ntot))
        M[:, :nvar] = A
        M[:, nvar : nvar + m] = -np.eye(m)
        self.lower = np.concatenate([problem.lower, lo_r, np.zeros(n_art)])
        self.upper = np.concatenate([problem.upper, up_r, np.full(n_art, np.inf)])
        val = np.zeros(ntot)
        val[:nvar] = x0
        val[nvar : nvar + m] = act
        basis = np.arange(nvar, nvar + m)
        for k, i in enumerate(viol):
            j = nvar + m + k
            r = nvar + i
            target = lo_r[i] if act[i] < lo_r[i] else up_r[i]
            # A_i x - r_i + s a_i = 0 with r_i pinned at the violated bound
            s = 1.0 if act[i] > target else -1.0
            M[i, j] = -s
            val[r] = target
            val[j] = abs(act[i] - target)
            basis[i] = j
        self.M = M
        self.val = val
        self.basis = basis
        self.is_basic = np.zeros(ntot, dtype=bool)
        self.is_basic[basis] = True
        self.refactor()

    def refactor(self):
        B = self.M[:, self.basis]
        try:
            self.T = np.linalg.solve(B, self.M)
        except np.linalg.LinAlgError as exc:
            raise SolverError(f"singular basis during refactorization: {exc}") from None
        nb = ~self.is_basic
        rhs = -self.M[:, nb] @ self.val[nb]
        self.val[self.basis] = np.linalg.solve(B, rhs)

    def run(self, cost, max_iter, state):
        """Minimize ``cost @ val`` from the current feasible basis."""
        T = self.T
        d = cost - cost[self.basis] @ T
        degenerate_run = 0
        bland = False
        while True:
            if state["iterations"] >= max_iter:
                raise SolverError(f"simplex iteration limit ({max_iter}) exceeded")
            val, lower, upper = self.val, self.lower, self.upper
            nb = ~self.is_basic
            at_upper = val >= upper - BOUND_TOL
            at_lower = val <= lower + BOUND_TOL
            movable = upper > lower
            can_inc = nb & movable & ~at_upper & (d < -COST_TOL)
            can_dec = nb & movable & ~at_lower & (d > COST_TOL)
            cand = np.flatnonzero(can_inc | can_dec)
            if cand.size == 0:
                return "optimal"
            if bland:
                j = int(cand[0])
                state["bland_used"] = True
            else:
                j = int(cand[np.argmax(np.abs(d[cand]))])
            direction = 1.0 if can_inc[j] else -1.0

            alpha = T[:, j] * direction
            bvals = val[self.basis]
            blo = lower[self.basis]
            bup = upper[self.basis]
            ratios = np.full(self.m, np.inf)
            dec = alpha > PIVOT_TOL
            inc = alpha < -PIVOT_TOL
            ratios[dec] = (bvals[dec] - blo[dec]) / alpha[dec]
            ratios[inc] = (bup[inc] - bvals[inc]) / (-alpha[inc])
            ratios = np.maximum(ratios, 0.0)
            step_self = upper[j] - lower[j]
            t_min = ratios.min() if self.m else np.inf
            if step_self <= t_min:
                t = step_self
                if not np.isfinite(t):
                    return "unbounded"
                val[self.basis] = bvals - t * alpha
                val[j] = upper[j] if direction > 0 else lower[j]
                state["iterations"] += 1
                degenerate_run = 0
                bland = False
                continue
            if not np.isfinite(t_min):
                return "unbounded"
            t = t_min
            ties = np.flatnonzero(ratios <= t_min + 1e-12)
            if bland:
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                r = int(ties[np.argmax(np.abs(alpha[ties]))])
            leaving = self.basis[r]
            val[self.basis] = bvals - t * alpha
            val[j] = val[j] + direction * t
            val[leaving] = lower[leaving] if alpha[r] > 0 else upper[leaving]

            piv = T[r, j]
            T[r] /= piv
            col = T[:, j].copy()
            col[r] = 0.0
            T -= np.outer(col, T[r])
            d -= d[j] * T[r]
            self.is_basic[leaving] = False
            self.is_basic[j] = True
            self.basis[r] = j
            state["iterations"] += 1
            state["pivots"] += 1

            if t <= BOUND_TOL:
                degenerate_run += 1
                if degenerate_run >= DEGENERATE_SWITCH:
                    bland = True
            else:
                degenerate_run = 0
                bland = False
            if state["pivots"] % REFACTOR_EVERY == 0:
                self.refactor()
                T = self.T
                d = cost - cost[self.basis] @ T


def solve_lp(problem, max_iter=None):
    """Solve ``problem``; return an :class:`LpSolution`.

    Infeasible and unbounded problems are reported through ``status``.
    Hitting the iteration limit raises :class:`SolverError`, as does an
    optimal point that fails the final feasibility check.
    """
    m, nvar = problem.shape
    if max_iter is None:
        max_iter = 50 * (m + nvar) + 1000
    tab = _Tableau(problem)
    state = {"iterations": 0, "pivots": 0, "bland_used": False}
    ntot = len(tab.val)

    if tab.n_art:
        phase1 = np.zeros(ntot)
        phase1[nvar + m :] = 1.0
        status = tab.run(phase1, max_iter, state)
        if status != "optimal":
            raise SolverError(f"phase 1 ended with status {status!r}")
        infeas = float(tab.val[nvar + m :].sum())
        if infeas > FEAS_TOL:
            return _finish(problem, tab, state, "infeasible")
        tab.upper[nvar + m :] = 0.0
        tab.val[nvar + m :] = np.minimum(tab.val[nvar + m :], 0.0)
        tab.refactor()

    cost = np.zeros(ntot)
    cost[:nvar] = problem.objective
    status = tab.run(cost, max_iter, state)
    tab.refactor()
    return _finish(problem, tab, state, status)


def _finish(problem, tab, state, status):
    rule = "dantzig+bland" if state["bland_used"] else "dantzig"
    meta = {"pivots": state["pivots"], "artificials": tab.n_art}
    if status != "optimal":
        return LpSolution(status, iterations=state["iterations"], pivot_rule=rule, meta=meta)
    x = np.clip(tab.val[: tab.nvar], problem.lower, problem.upper)
    if np.max(np.abs(x - tab.val[: tab.nvar]), initial=0.0) > 1e-7:
        raise SolverError("optimal point drifted outside its bounds")
    check_feasible(problem, x)
    return LpSolution(
        "optimal",
        x=x,
        objective_value=float(problem.objective @ x),
        iterations=state["iterations"],
        pivot_rule=rule,
        meta=meta,
    )


def check_feasible(problem, x, tol=FEAS_TOL):
    """Raise :class:`SolverError` unless ``x`` satisfies every row and bound."""
    if np.any(x < problem.lower - BOUND_TOL) or np.any(x > problem.upper + BOUND_TOL):
        raise SolverError("point violates variable bounds")
    act = problem.A @ x
    for i, op in enumerate(problem.ops):
        b = problem.rhs[i]
        if (op in (LE, EQ) and act[i] > b + tol) or (op in (GE, EQ) and act[i] < b - tol):
            raise SolverError(f"row {i} violated: {act[i]!r} {op} {b!r}")
