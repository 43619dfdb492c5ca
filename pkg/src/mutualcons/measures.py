"""Problem instances, the OWA operator and the consensus measures.

All measures are read as *distances*: 0 means full agreement.

``kappa_mutual``
    largest gap between any two opinions, ``max(x) - min(x)``.
``kappa_max_dev``
    largest distance from an opinion to the aggregate ``phi(x)``.
``kappa_weighted_dev``
    importance-weighted mean distance to the aggregate.
``kappa_pairwise``
    importance-weighted mean of pairwise distances.

A point with mutual consensus at most ``alpha`` has every other measure at
most ``alpha`` as well, for any averaging aggregator and any weights.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError, ValidationError
from .validation import (
    check_opinions,
    check_same_length,
    check_threshold,
    check_weights,
    normalized_from,
)

MEMBERSHIP_TOL = 1e-12

REGIONS = ("delta", "epsilon", "gamma1", "gamma2")


@dataclass(frozen=True)
class Instance:
    """A full consensus problem: opinions, costs, weights and thresholds.

    Vectors are stored as tuples so instances are hashable and compare by
    value; the ``o``, ``c``, ``omega`` and ``w`` properties hand out arrays.
    ``importance_weights`` may be omitted, in which case the uniform vector
    is used wherever a measure needs it.
    """

    opinions: tuple
    costs: tuple
    owa_weights: tuple
    epsilon: float
    importance_weights: tuple = None
    delta: float = None
    gamma1: float = None
    gamma2: float = None

    def __post_init__(self):
        o = check_opinions(self.opinions, "opinions")
        n = len(o)
        c = check_weights(self.costs, "costs", n)
        om = check_weights(self.owa_weights, "owa_weights", n)
        set_ = object.__setattr__
        set_(self, "opinions", tuple(float(v) for v in o))
        set_(self, "costs", tuple(float(v) for v in c))
        set_(self, "owa_weights", tuple(float(v) for v in om))
        if self.importance_weights is not None:
            w = check_weights(self.importance_weights, "importance_weights", n)
            set_(self, "importance_weights", tuple(float(v) for v in w))
        set_(self, "epsilon", check_threshold(self.epsilon, "epsilon"))
        for name in ("delta", "gamma1", "gamma2"):
            set_(self, name, check_threshold(getattr(self, name), name, allow_none=True))

    @classmethod
    def create(cls, opinions, costs, owa_weights, epsilon, normalize_costs=False, **kw):
        if normalize_costs:
            costs = normalized_from(costs, "costs")
        return cls(tuple(opinions), tuple(costs), tuple(owa_weights), epsilon, **kw)

    @property
    def n(self):
        return len(self.opinions)

    @property
    def o(self):
        return np.array(self.opinions)

    @property
    def c(self):
        return np.array(self.costs)

    @property
    def omega(self):
        return np.array(self.owa_weights)

    @property
    def w(self):
        if self.importance_weights is None:
            return np.full(self.n, 1.0 / self.n)
        return np.array(self.importance_weights)

    def to_dict(self):
        d = {
            "opinions": list(self.opinions),
            "costs": list(self.costs),
            "owa_weights": list(self.owa_weights),
            "epsilon": self.epsilon,
        }
        if self.importance_weights is not None:
            d["importance_weights"] = list(self.importance_weights)
        for name in ("delta", "gamma1", "gamma2"):
            if getattr(self, name) is not None:
                d[name] = getattr(self, name)
        return d


@dataclass(frozen=True)
class Aggregator:
    """An averaging aggregation operator.

    ``kind`` is one of ``"mean"``, ``"weighted-mean"`` or ``"owa"``; the
    latter two carry a weighting vector.
    """

    kind: str = "mean"
    weights: tuple = field(default=None)

    def __post_init__(self):
        if self.kind not in ("mean", "weighted-mean", "owa"):
            raise ValidationError(f"unknown aggregator kind {self.kind!r}")
        if self.kind == "mean":
            if self.weights is not None:
                raise ValidationError("arithmetic mean takes no weights")
            return
        w = check_weights(self.weights, f"{self.kind} weights")
        object.__setattr__(self, "weights", tuple(float(v) for v in w))

    @classmethod
    def arithmetic_mean(cls):
        return cls("mean")

    @classmethod
    def weighted_mean(cls, w):
        return cls("weighted-mean", tuple(np.asarray(w, dtype=float)))

    @classmethod
    def owa(cls, omega):
        return cls("owa", tuple(np.asarray(omega, dtype=float)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "mean":
            return float(x.mean())
        w = np.asarray(self.weights)
        if len(w) != len(x):
            raise DimensionError(
                f"aggregator has {len(w)} weights but x has {len(x)} entries"
            )
        if self.kind == "weighted-mean":
            return float(w @ x)
        return float(w @ np.sort(x)[::-1])


def owa(omega, x):
    """OWA aggregate: ``omega`` applied to ``x`` sorted in decreasing order."""
    omega = np.asarray(omega, dtype=float)
    x = np.asarray(x, dtype=float)
    if omega.shape != x.shape:
        raise DimensionError(
            f"owa weights have length {len(omega)} but x has {len(x)} entries"
        )
    return float(omega @ np.sort(x, kind="stable")[::-1])


def kappa_mutual(x):
    x = np.asarray(x, dtype=float)
    return float(x.max() - x.min())


def kappa_max_dev(x, phi):
    x = np.asarray(x, dtype=float)
    g = phi(x)
    return float(np.max(np.abs(x - g)))


def kappa_owa(x, omega):
    """Shorthand for ``kappa_max_dev`` with the OWA aggregator."""
    x = np.asarray(x, dtype=float)
    g = owa(omega, x)
    return float(np.max(np.abs(x - g)))


def kappa_weighted_dev(x, w, phi):
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    if len(w) != len(x):
        raise DimensionError(f"w has length {len(w)} but x has {len(x)} entries")
    return float(w @ np.abs(x - phi(x)))


def kappa_pairwise(x, w):
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    n = len(x)
    if len(w) != n:
        raise DimensionError(f"w has length {len(w)} but x has {n} entries")
    if n < 2:
        raise ValidationError("pairwise consensus is undefined for a single opinion")
    diffs = np.abs(x[:, None] - x[None, :])
    pair_w = w[:, None] + w[None, :]
    # the full matrix counts every unordered pair twice
    return float(np.sum(pair_w * diffs) / (2 * (n - 1)))


def membership(x, instance):
    """Which of the instance's threshold regions contain ``x``.

    Returns a dict keyed by region name (``"delta"``, ``"epsilon"``,
    ``"gamma1"``, ``"gamma2"``), with one entry per threshold the instance
    sets.  Comparisons allow ``MEMBERSHIP_TOL`` slack.
    """
    x = check_opinions(x, "x")
    check_same_length(instance.n, x, "x")
    omega = instance.omega
    report = {}
    if instance.delta is not None:
        report["delta"] = kappa_mutual(x) <= instance.delta + MEMBERSHIP_TOL
    report["epsilon"] = kappa_owa(x, omega) <= instance.epsilon + MEMBERSHIP_TOL
    if instance.gamma1 is not None:
        val = kappa_weighted_dev(x, instance.w, Aggregator.owa(omega))
        report["gamma1"] = val <= instance.gamma1 + MEMBERSHIP_TOL
    if instance.gamma2 is not None:
        val = kappa_pairwise(x, instance.w)
        report["gamma2"] = val <= instance.gamma2 + MEMBERSHIP_TOL
    return report


def diagnostics(x, instance):
    """Every measure of ``x`` under the instance's weights, as a dict."""
    x = np.asarray(x, dtype=float)
    omega = instance.omega
    agg = Aggregator.owa(omega)
    out = {
        "group_value": owa(omega, x),
        "kappa_mutual": kappa_mutual(x),
        "kappa_owa": kappa_owa(x, omega),
        "kappa_weighted_dev": kappa_weighted_dev(x, instance.w, agg),
    }
    if instance.n > 1:
        out["kappa_pairwise"] = kappa_pairwise(x, instance.w)
    return out
