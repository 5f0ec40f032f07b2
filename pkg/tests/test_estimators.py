import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from mongefoil import ExtremalFunction, RobinFunction
from mongefoil.errors import InvalidArgumentError
from mongefoil.estimators import check_body, check_complex_array
from mongefoil.extremal import leaf_eval, solve_extremal
from mongefoil.vk import vk_ball

from conftest import square, unit_ball

SQUARE_PTS = [[-1, -1], [1, -1], [1, 1], [-1, 1], [0, 0]]


def test_params_and_clone():
    est = ExtremalFunction(tol=1e-9, n_starts=4)
    assert est.get_params() == {"tol": 1e-9, "n_starts": 4, "errors": "raise"}
    assert clone(est).get_params() == est.get_params()
    assert est.set_params(n_starts=2).n_starts == 2


def test_not_fitted():
    with pytest.raises(NotFittedError):
        ExtremalFunction().predict([[2, 0]])
    with pytest.raises(NotFittedError):
        RobinFunction().predict([[1, 0]])


def test_fit_point_cloud_and_predict():
    est = ExtremalFunction().fit(SQUARE_PTS)
    assert est.n_features_in_ == 2
    vals = est.predict([[2, 0], [0, 0]])
    np.testing.assert_allclose(vals, [np.log(2 + np.sqrt(3)), 0], atol=1e-9)


def test_transform_recovers_leaf():
    K = square()
    d = solve_extremal(K, [1, 0.5 + 0.5j])
    z = leaf_eval(d, 0.3 + 0.2j)
    T = ExtremalFunction().fit(K).transform([z, [0.1, 0.1]])
    assert T.shape == (2, 3)
    disk = solve_extremal(K, T[0, :2])
    np.testing.assert_allclose(leaf_eval(disk, T[0, 2]), z, atol=1e-8)
    assert np.all(np.isnan(T[1]))


def test_score():
    Z = np.array([[2, 1j], [0.3, 3]])
    est = ExtremalFunction().fit(unit_ball())
    assert est.score(Z, [vk_ball(z) for z in Z]) > -1e-8


def test_robin_estimator():
    est = RobinFunction().fit(unit_ball())
    np.testing.assert_allclose(est.predict([[1, 1j]]), [np.log(2)])
    np.testing.assert_allclose(est.transform([[1, 1j]]), [[0.5, 0, 0]])
    assert list(est.indicatrix_contains([[0, 0], [0.3, 0.3j], [1, 1j]])) == [True, True, False]
    with pytest.raises(InvalidArgumentError):
        est.predict([[0, 0]])


def test_validation():
    assert check_complex_array([1, 2j]).shape == (1, 2)
    with pytest.raises(InvalidArgumentError):
        check_complex_array([[1, np.nan]])
    with pytest.raises(InvalidArgumentError):
        check_complex_array([[1, 2]], n_features=3)
    with pytest.raises(InvalidArgumentError):
        check_complex_array(np.zeros((0, 2)))
    with pytest.raises(InvalidArgumentError):
        check_body([1, 2, 3])
    with pytest.raises(InvalidArgumentError):
        ExtremalFunction().fit(square()).predict([[1, 2, 3]])
