import numpy as np
import pytest
from sklearn.base import clone

from dynsink import MinimaxSinkLocator, MinisumSinkLocator


def test_minimax_locator_fit(net_a):
    X = np.array([[0.0], [1.0], [3.0]])
    w = np.array([1.0, 2.0, 1.0])
    est = MinimaxSinkLocator(k=2).fit(X, sample_weight=w)
    assert est.cost_ == pytest.approx(2.0)
    np.testing.assert_allclose(est.sinks_, [1.0, 3.0])
    np.testing.assert_array_equal(est.dividers_, [2])
    labels = est.predict([[0.5], [1.9], [2.1], [3.0]])
    np.testing.assert_array_equal(labels, [0, 0, 1, 1])


def test_minisum_locator_fit(net_a):
    est = MinisumSinkLocator(k=1).fit([0.0, 1.0, 3.0], sample_weight=[1.0, 2.0, 1.0])
    assert est.cost_ == pytest.approx(4.0)
    np.testing.assert_allclose(est.sinks_, [1.0])
    assert est.placement_.objective == "minisum"


def test_offset_and_order_invariance():
    # shifted, shuffled input with default unit supplies
    base = MinimaxSinkLocator(k=2).fit([0.0, 2.0, 5.0, 6.0])
    moved = MinimaxSinkLocator(k=2).fit([16.0, 12.0, 10.0, 15.0])
    assert moved.cost_ == pytest.approx(base.cost_)
    np.testing.assert_allclose(moved.sinks_, base.sinks_ + 10.0)


def test_duplicate_points_merge_supplies():
    a = MinisumSinkLocator(k=1).fit([0.0, 1.0, 1.0, 3.0])
    b = MinisumSinkLocator(k=1).fit([0.0, 1.0, 3.0], sample_weight=[1.0, 2.0, 1.0])
    assert a.cost_ == pytest.approx(b.cost_)
    np.testing.assert_allclose(a.sinks_, b.sinks_)


def test_sklearn_protocol():
    est = MinisumSinkLocator(k=3, capacity=2.0, tau=0.5)
    assert est.get_params() == {"k": 3, "capacity": 2.0, "tau": 0.5}
    cloned = clone(est)
    assert cloned.get_params() == est.get_params()
    est.set_params(k=1)
    assert est.k == 1


def test_fit_predict(net_a):
    labels = MinimaxSinkLocator(k=2).fit_predict(
        [0.0, 1.0, 3.0], sample_weight=[1.0, 2.0, 1.0]
    )
    np.testing.assert_array_equal(labels, [0, 0, 1])


def test_input_validation():
    with pytest.raises(ValueError):
        MinimaxSinkLocator(k=1).fit(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        MinimaxSinkLocator(k=1).fit([])
    with pytest.raises(ValueError):
        MinimaxSinkLocator(k=1).fit([1.0, 2.0], sample_weight=[1.0])
    with pytest.raises(RuntimeError):
        MinimaxSinkLocator(k=1).predict([1.0])
