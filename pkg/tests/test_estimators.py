import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from mutualcons import (
    DimensionError,
    MutualConsensus,
    OWAConsensus,
    ValidationError,
    ap_owamcc,
    solve_mcmc,
)

O1 = (0.05, 0.1, 0.25, 0.3, 0.6)
C1 = tuple(np.array((1, 4, 3, 5, 2)) / 15)
W1 = (0.375, 0.1875, 0.25, 0.0625, 0.125)


def test_mutual_consensus_rows(rng):
    X = rng.random((6, 5))
    est = MutualConsensus(delta=0.3, costs=C1).fit(X)
    assert est.n_features_in_ == 5
    out = est.transform(X)
    for x, y in zip(X, out):
        np.testing.assert_array_equal(y, solve_mcmc(x, C1, 0.3).x)
    np.testing.assert_allclose(est.consensus_cost(X), [solve_mcmc(x, C1, 0.3).cost for x in X])


def test_owa_consensus_example1(example1):
    est = OWAConsensus(owa_weights=W1, epsilon=0.2, costs=C1)
    X = np.array([O1])
    out = est.fit_transform(X)
    np.testing.assert_allclose(out[0], ap_owamcc(example1).x)
    assert est.predict(X)[0] == pytest.approx(0.3)
    assert est.consensus_cost(X)[0] == pytest.approx(0.025556, abs=1e-6)


def test_methods_agree_on_uniform_costs(rng):
    X = rng.random((4, 4))
    omega = (0.4, 0.3, 0.2, 0.1)
    costs = {m: OWAConsensus(omega, 0.1, method=m).fit(X).consensus_cost(X)
             for m in ("approx", "exact", "symmetric")}
    np.testing.assert_allclose(costs["exact"], costs["symmetric"], atol=1e-7)
    assert np.all(costs["approx"] >= costs["exact"] - 1e-9)


def test_params_and_clone():
    est = OWAConsensus(owa_weights=W1, epsilon=0.1, method="exact")
    params = est.get_params()
    assert params["method"] == "exact" and params["epsilon"] == 0.1
    other = clone(est).set_params(epsilon=0.3)
    assert other.epsilon == 0.3 and est.epsilon == 0.1


def test_pipeline(rng):
    X = rng.random((3, 5))
    pipe = make_pipeline(MutualConsensus(delta=0.5), OWAConsensus(W1, 0.2))
    out = pipe.fit_transform(X)
    assert out.shape == X.shape


def test_validation(rng):
    X = rng.random((2, 5))
    with pytest.raises(NotFittedError):
        MutualConsensus().transform(X)
    with pytest.raises(ValidationError):
        MutualConsensus().fit(X + 1)
    with pytest.raises(ValidationError):
        MutualConsensus(delta=2).fit(X)
    with pytest.raises(DimensionError):
        MutualConsensus().fit(X).transform(X[:, :3])
    with pytest.raises(ValidationError):
        OWAConsensus().fit(X)
    with pytest.raises(ValidationError):
        OWAConsensus(W1, method="lp").fit(X)
    with pytest.raises(DimensionError):
        OWAConsensus((0.5, 0.5)).fit(X)
