import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from aloha_backoff.equilibrium import equilibrium_points
from aloha_backoff.estimators import EquilibriumFeatures, StabilityClassifier, validate_configurations

X = np.array([
    [50, 0.3, 0.5, np.inf],
    [50, 0.3, 0.2, 1],
    [10, 0.1, 0.1, 1],
    [50, 0.3, 0.95, np.inf],
])


def test_classifier_predicts_labels():
    clf = StabilityClassifier().fit(X)
    assert list(clf.predict(X)) == ["quasi-stable", "unstable", "absolute-stable", "unstable"]
    assert set(clf.classes_) == {"absolute-stable", "quasi-stable", "unstable"}
    assert clf.n_features_in_ == 4


def test_classifier_score_against_labels():
    y = ["quasi-stable", "unstable", "absolute-stable", "quasi-stable"]
    assert StabilityClassifier().fit(X, y).score(X, y) == 0.75


def test_params_and_clone():
    clf = StabilityClassifier(exact_quasi=True)
    assert clf.get_params() == {"exact_quasi": True}
    assert clone(clf).set_params(exact_quasi=False).exact_quasi is False


def test_unfitted_raises():
    with pytest.raises(NotFittedError):
        StabilityClassifier().predict(X)
    with pytest.raises(NotFittedError):
        EquilibriumFeatures().transform(X)


def test_features():
    F = EquilibriumFeatures().fit_transform(X)
    assert F.shape == (4, 7)
    eq = equilibrium_points(0.3)
    assert F[0, 0] == eq.p_L and F[0, 1] == eq.p_S
    assert F[0, 3] == pytest.approx(0.006 * 0.5 / (eq.p_L + 0.5 - 1))
    (row,) = EquilibriumFeatures().fit_transform([[50, 0.3, 0.2, np.inf]])
    assert math.isnan(row[3])  # p_L + q < 1: no stationary phase law
    assert math.isnan(EquilibriumFeatures().fit_transform([[50, 0.5, 0.2, 1]])[0, 4])  # above 1/e
    assert F[2, 6] == 0.1
    assert list(EquilibriumFeatures().fit(X).get_feature_names_out())[0] == "p_L"


def test_pipeline_composes():
    pipe = make_pipeline(EquilibriumFeatures())
    assert pipe.fit_transform(X).shape == (4, 7)


@pytest.mark.parametrize("bad", [
    np.array([[50, 0.3, 0.5]]),
    np.array([[0, 0.3, 0.5, 1]]),
    np.array([[50.5, 0.3, 0.5, 1]]),
    np.array([[50, 0.3, 0.5, 1.5]]),
    np.array([[50, np.nan, 0.5, 1]]),
    np.array([[50, 0.3, 0.5, -np.inf]]),
])
def test_validation(bad):
    with pytest.raises(ValueError):
        validate_configurations(bad)
