"""LP builder for consensus problems restricted to a fixed ordering.

Once ``y_1 >= y_2 >= ... >= y_n`` is imposed, the OWA aggregate becomes the
linear form ``omega @ y``, the largest deviation from it is attained at
``y_1`` or ``y_n``, and every pairwise difference ``y_k - y_l`` (k < l) is
nonnegative.  The remaining absolute values, the cost terms and the
deviations inside the weighted-deviation measure, are split into pairs of
nonnegative variables.

Column layout: ``p`` (n), ``q`` (n) with ``y = o + p - q``; then ``u`` and
``v`` (n each) only when a weighted-deviation threshold is set.
"""

import numpy as np

from .lp import EQ, GE, LE, LpProblem, solve_lp


def build_ordered_lp(o, c, omega=None, w=None, epsilon=None, delta=None,
                     gamma1=None, gamma2=None):
    """Return an :class:`LpProblem` for opinions already placed in order.

    ``o``, ``c`` and ``w`` are given in the imposed order (position k is the
    k-th largest of the adjusted vector); ``omega`` is positional.
    """
    o = np.asarray(o, dtype=float)
    n = len(o)
    with_uv = gamma1 is not None
    nvar = 4 * n if with_uv else 2 * n

    y_rows, y_ops, y_rhs = [], [], []

    def y_row(coef, op, b):
        y_rows.append(coef)
        y_ops.append(op)
        y_rhs.append(b)

    eye = np.eye(n)
    for k in range(n - 1):
        y_row(eye[k] - eye[k + 1], GE, 0.0)
    if delta is not None and n > 1:
        y_row(eye[0] - eye[n - 1], LE, delta)
    if epsilon is not None:
        om = np.asarray(omega, dtype=float)
        y_row(eye[0] - om, LE, epsilon)
        y_row(om - eye[n - 1], LE, epsilon)
    if gamma2 is not None and n > 1:
        w = np.asarray(w, dtype=float)
        g = np.empty(n)
        for k in range(n):
            after = (n - 1 - k) * w[k] + w[k + 1 :].sum()
            before = k * w[k] + w[:k].sum()
            g[k] = (after - before) / (n - 1)
        y_row(g, LE, gamma2)

    rows, ops, rhs = [], [], []
    for coef, op, b in zip(y_rows, y_ops, y_rhs):
        full = np.zeros(nvar)
        full[:n] = coef
        full[n : 2 * n] = -coef
        rows.append(full)
        ops.append(op)
        rhs.append(b - coef @ o)

    if with_uv:
        om = np.asarray(omega, dtype=float)
        w = np.asarray(w, dtype=float)
        for k in range(n):
            coef = eye[k] - om
            full = np.zeros(nvar)
            full[:n] = coef
            full[n : 2 * n] = -coef
            full[2 * n + k] = -1.0
            full[3 * n + k] = 1.0
            rows.append(full)
            ops.append(EQ)
            rhs.append(-(coef @ o))
        full = np.zeros(nvar)
        full[2 * n : 3 * n] = w
        full[3 * n :] = w
        rows.append(full)
        ops.append(LE)
        rhs.append(gamma1)

    objective = np.zeros(nvar)
    objective[:n] = c
    objective[n : 2 * n] = c
    lower = np.zeros(nvar)
    upper = np.ones(nvar)
    upper[:n] = 1.0 - o
    upper[n : 2 * n] = o
    A = np.array(rows) if rows else np.zeros((0, nvar))
    return LpProblem(objective, A, ops, np.array(rhs), lower, upper)


def solve_ordered(o, c, **thresholds):
    """Solve the ordered LP; return ``(y, lp_solution)`` (``y`` is None if infeasible)."""
    o = np.asarray(o, dtype=float)
    n = len(o)
    sol = solve_lp(build_ordered_lp(o, c, **thresholds))
    if not sol.optimal:
        return None, sol
    y = o + sol.x[:n] - sol.x[n : 2 * n]
    return np.clip(y, 0.0, 1.0), sol
