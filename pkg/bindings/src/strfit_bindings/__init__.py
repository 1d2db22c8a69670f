"""Estimator-style wrappers around the strfit model zoo.

Each model family is exposed as a conventional regressor class: construct
with hyperparameters, fit(X, y), predict(X), and str(model) for the exact
render string the core library produces. All numerics live in the core
package; the wrapper only holds a handle to a fitted core model.
"""

from .estimators import (
    NotFittedError,
    STRFIT_REGRESSORS,
    BaseStrfitRegressor,
    Dt8Regressor,
    Dt20Regressor,
    GbmStumpsRegressor,
    HingeEbmRegressor,
    HingeGamRegressor,
    HybridGamRegressor,
    LassoRegressor,
    OlsRegressor,
    RandomForestRegressor,
    RidgeRegressor,
    RidgeRfResidRegressor,
    SmartAdditiveRegressor,
    SparseSignedBasisPursuitRegressor,
    TinyDtRegressor,
    WinsorizedSparseOlsRegressor,
    load_suite,
    score,
    wrap,
)

__version__ = "0.1.0"

__all__ = [
    "BaseStrfitRegressor",
    "Dt20Regressor",
    "Dt8Regressor",
    "GbmStumpsRegressor",
    "HingeEbmRegressor",
    "HingeGamRegressor",
    "HybridGamRegressor",
    "LassoRegressor",
    "NotFittedError",
    "OlsRegressor",
    "RandomForestRegressor",
    "RidgeRegressor",
    "RidgeRfResidRegressor",
    "STRFIT_REGRESSORS",
    "SmartAdditiveRegressor",
    "SparseSignedBasisPursuitRegressor",
    "TinyDtRegressor",
    "WinsorizedSparseOlsRegressor",
    "load_suite",
    "score",
    "wrap",
]
