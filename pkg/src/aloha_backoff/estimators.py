"""scikit-learn adapters over the analytic model.

Input rows are configurations ``[n, lambda_hat, q, K]``; ``K`` may be
``inf``. Nothing is learned: ``fit`` only validates and records the input
width, so these compose with pipelines, ``get_params`` and cloning.
"""

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .equilibrium import (
    BackoffConfig,
    equilibrium_points,
    offered_load,
    undesired_point,
)
from .errors import NoEquilibriumError, NoStationaryDistributionError
from .regions import Stability, classify, q_lower, q_upper

__all__ = ["StabilityClassifier", "EquilibriumFeatures", "validate_configurations"]

CONFIG_COLUMNS = ("n", "lambda_hat", "q", "K")


def validate_configurations(X):
    """Check an ``(m, 4)`` array of ``[n, lambda_hat, q, K]`` rows; return it as floats.

    ``K`` may be ``inf`` (unbounded backoff); every other entry must be finite.
    """
    X = check_array(X, dtype=float, ensure_all_finite=False)
    if X.shape[1] != len(CONFIG_COLUMNS):
        raise ValueError(f"expected {len(CONFIG_COLUMNS)} columns {CONFIG_COLUMNS}, got {X.shape[1]}")
    if not np.isfinite(X[:, :3]).all() or np.isnan(X[:, 3]).any():
        raise ValueError("n, lambda_hat and q must be finite; K must be a number or inf")
    n, K = X[:, 0], X[:, 3]
    if (n < 1).any() or (n != np.round(n)).any():
        raise ValueError("n must be a positive integer")
    finite_K = K[np.isfinite(K)]
    if (finite_K < 1).any() or (finite_K != np.round(finite_K)).any():
        raise ValueError("K must be a positive integer or inf")
    if (K == -np.inf).any():
        raise ValueError("K must be a positive integer or inf")
    return X


def _config(row):
    n, lh, q, K = row
    return BackoffConfig.from_aggregate(int(n), float(lh), float(q), math.inf if math.isinf(K) else int(K))


class StabilityClassifier(ClassifierMixin, BaseEstimator):
    """Label each configuration absolute-stable, quasi-stable or unstable.

    Parameters
    ----------
    exact_quasi : bool, default False
        Solve the unbounded-backoff quasi-stable region exactly rather than
        with its large-n form.
    """

    def __init__(self, exact_quasi=False):
        self.exact_quasi = exact_quasi

    def fit(self, X, y=None):
        X = validate_configurations(X)
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([s.value for s in Stability])
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        X = validate_configurations(X)
        return np.array([classify(_config(row), self.exact_quasi).classification.value for row in X])


class EquilibriumFeatures(TransformerMixin, BaseEstimator):
    """Map configurations to analytic features.

    Columns, in order: ``p_L``, ``p_S``, ``p_A``, ``rho`` (offered load at
    ``p_L``), ``q_l``, ``q_u`` and the predicted throughput. Quantities that
    do not exist for a row (no equilibrium, no stationary phase law) are NaN.
    """

    feature_names = ("p_L", "p_S", "p_A", "rho", "q_l", "q_u", "predicted_throughput")

    def __init__(self, exact_quasi=False):
        self.exact_quasi = exact_quasi

    def fit(self, X, y=None):
        X = validate_configurations(X)
        self.n_features_in_ = X.shape[1]
        return self

    def _row(self, row):
        cfg = _config(row)
        eq = equilibrium_points(cfg.lambda_hat)
        out = [eq.p_L, eq.p_S, undesired_point(cfg.n, cfg.q, cfg.K), math.nan, math.nan, math.nan]
        if eq.exists:
            try:
                out[3] = offered_load(cfg.lam, eq.p_L, cfg.q, cfg.K)
            except NoStationaryDistributionError:
                pass
            if cfg.lambda_hat > 0:
                try:
                    out[4] = q_lower(cfg.n, cfg.lambda_hat, cfg.K)
                except NoEquilibriumError:
                    pass
                out[5] = q_upper(cfg.n, cfg.lambda_hat)
        out.append(classify(cfg, self.exact_quasi).predicted_throughput)
        return out

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = validate_configurations(X)
        return np.array([self._row(row) for row in X], dtype=float).reshape(len(X), len(self.feature_names))

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)
