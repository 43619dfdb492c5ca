"""scikit-learn style wrappers.

Each row of ``X`` is one group's opinion vector (one column per decision
maker).  ``fit`` validates the parameters against the number of columns;
``transform`` returns the adjusted opinions row by row and ``predict`` the
resulting group value.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import DimensionError, ValidationError
from .mcmc import solve_mcmc
from .measures import Instance, owa
from .owamcc import ap_owamcc, solve_exact_enum, solve_symmetric_linear
from .validation import check_threshold, check_weights


def _check_X(X, n=None):
    X = check_array(X, dtype=float)
    if np.any((X < 0) | (X > 1)):
        raise ValidationError("opinions must lie in [0, 1]")
    if n is not None and X.shape[1] != n:
        raise DimensionError(f"X has {X.shape[1]} columns, estimator was fitted with {n}")
    return X


def _costs(costs, n):
    if costs is None:
        return np.full(n, 1.0 / n)
    return check_weights(costs, "costs", n)


class MutualConsensus(TransformerMixin, BaseEstimator):
    """Cheapest adjustment bringing every pair of opinions within ``delta``."""

    def __init__(self, delta=0.2, costs=None):
        self.delta = delta
        self.costs = costs

    def fit(self, X, y=None):
        X = _check_X(X)
        self.n_features_in_ = X.shape[1]
        self.delta_ = check_threshold(self.delta, "delta")
        self.costs_ = _costs(self.costs, self.n_features_in_)
        return self

    def _solve(self, X):
        check_is_fitted(self)
        X = _check_X(X, self.n_features_in_)
        return [solve_mcmc(x, self.costs_, self.delta_) for x in X]

    def transform(self, X):
        return np.array([r.x for r in self._solve(X)])

    def consensus_cost(self, X):
        return np.array([r.cost for r in self._solve(X)])


class OWAConsensus(TransformerMixin, BaseEstimator):
    """Cheapest adjustment keeping every opinion within ``epsilon`` of the OWA aggregate.

    ``method`` selects the solver: ``"approx"`` (radius interpolation, any
    size), ``"exact"`` (ordering enumeration, n <= 9) or ``"symmetric"``
    (single LP, uniform costs only).
    """

    def __init__(self, owa_weights=None, epsilon=0.15, costs=None, method="approx",
                 max_iters=10, tau=0.01):
        self.owa_weights = owa_weights
        self.epsilon = epsilon
        self.costs = costs
        self.method = method
        self.max_iters = max_iters
        self.tau = tau

    def fit(self, X, y=None):
        X = _check_X(X)
        n = X.shape[1]
        if self.method not in ("approx", "exact", "symmetric"):
            raise ValidationError(f"unknown method {self.method!r}")
        if self.owa_weights is None:
            raise ValidationError("owa_weights is required")
        self.n_features_in_ = n
        self.omega_ = check_weights(self.owa_weights, "owa_weights", n)
        self.costs_ = _costs(self.costs, n)
        self.epsilon_ = check_threshold(self.epsilon, "epsilon")
        return self

    def _solve_row(self, x):
        inst = Instance(tuple(x), tuple(self.costs_), tuple(self.omega_), self.epsilon_)
        if self.method == "approx":
            res = ap_owamcc(inst, max_iters=self.max_iters, tau=self.tau)
        elif self.method == "exact":
            res = solve_exact_enum(inst)
        else:
            res = solve_symmetric_linear(inst)
        return res.x, res.cost

    def _solve(self, X):
        check_is_fitted(self)
        X = _check_X(X, self.n_features_in_)
        return [self._solve_row(x) for x in X]

    def transform(self, X):
        return np.array([x for x, _ in self._solve(X)])

    def predict(self, X):
        """Group value (OWA aggregate) of the adjusted opinions, per row."""
        return np.array([owa(self.omega_, x) for x in self.transform(X)])

    def consensus_cost(self, X):
        return np.array([cost for _, cost in self._solve(X)])
