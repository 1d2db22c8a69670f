"""Regressor classes delegating to the strfit core.

The wrapper computes nothing itself: fit builds a core dataset from the
arrays and calls the registry, predict and str() forward to the fitted
core model, and save/load go through the core's JSON schema.
"""

from __future__ import annotations

import numpy as np

from strfit.data import Dataset
from strfit.models import MODEL_IDS, fit_model, load_model, save_model
from strfit.simtest import EvaluatorConfig, load_suite, run_suite, score_suite
from strfit.simtest.cases import default_suite_path


class NotFittedError(RuntimeError):
    """Raised when predict / render is called before fit."""


class BaseStrfitRegressor:
    """fit(X, y) -> self; predict(X) -> array; str() -> the core render."""

    model_id: str = ""

    def __init__(self, seed: int = 0, feature_names=None, **hyperparameters):
        self.seed = seed
        self.feature_names = list(feature_names) if feature_names is not None else None
        self.hyperparameters = hyperparameters
        self._model = None

    # sklearn-style parameter access
    def get_params(self) -> dict:
        params = {"seed": self.seed, "feature_names": self.feature_names}
        params.update(self.hyperparameters)
        return params

    def set_params(self, **params) -> "BaseStrfitRegressor":
        for key, value in params.items():
            if key == "seed":
                self.seed = value
            elif key == "feature_names":
                self.feature_names = list(value) if value is not None else None
            else:
                self.hyperparameters[key] = value
        return self

    @property
    def fitted_model(self):
        if self._model is None:
            raise NotFittedError(f"{type(self).__name__} must be fitted before use")
        return self._model

    def fit(self, X, y) -> "BaseStrfitRegressor":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        names = self.feature_names or [f"x{j}" for j in range(X.shape[1])]
        dataset = Dataset.from_arrays(X, y, feature_names=names, name=type(self).__name__)
        self._model = fit_model(self.model_id, dataset, seed=self.seed, **self.hyperparameters)
        return self

    def predict(self, X) -> np.ndarray:
        return self.fitted_model.predict(np.asarray(X, dtype=float))

    def __str__(self) -> str:
        if self._model is None:
            return f"<unfitted {type(self).__name__}>"
        return self._model.render()

    def save(self, path) -> None:
        save_model(self.fitted_model, path)

    @classmethod
    def load(cls, path) -> "BaseStrfitRegressor":
        wrapper = cls()
        wrapper._model = load_model(path)
        return wrapper


class OlsRegressor(BaseStrfitRegressor):
    model_id = "ols"


class RidgeRegressor(BaseStrfitRegressor):
    model_id = "ridge"


class LassoRegressor(BaseStrfitRegressor):
    model_id = "lasso"


class Dt8Regressor(BaseStrfitRegressor):
    model_id = "dt8"


class Dt20Regressor(BaseStrfitRegressor):
    model_id = "dt20"


class RandomForestRegressor(BaseStrfitRegressor):
    model_id = "rf"


class GbmStumpsRegressor(BaseStrfitRegressor):
    model_id = "gbm-stumps"


class TinyDtRegressor(BaseStrfitRegressor):
    model_id = "tiny-dt"


class HingeEbmRegressor(BaseStrfitRegressor):
    model_id = "hinge-ebm"


class HingeGamRegressor(BaseStrfitRegressor):
    model_id = "hinge-gam"


class SmartAdditiveRegressor(BaseStrfitRegressor):
    model_id = "smart-additive"


class HybridGamRegressor(BaseStrfitRegressor):
    model_id = "hybrid-gam"


class RidgeRfResidRegressor(BaseStrfitRegressor):
    model_id = "ridge-rf-resid"


class WinsorizedSparseOlsRegressor(BaseStrfitRegressor):
    model_id = "winsorized-sparse-ols"


class SparseSignedBasisPursuitRegressor(BaseStrfitRegressor):
    model_id = "sparse-signed-basis-pursuit"


STRFIT_REGRESSORS = {
    cls.model_id: cls
    for cls in (
        OlsRegressor,
        RidgeRegressor,
        LassoRegressor,
        Dt8Regressor,
        Dt20Regressor,
        RandomForestRegressor,
        GbmStumpsRegressor,
        TinyDtRegressor,
        HingeEbmRegressor,
        HingeGamRegressor,
        SmartAdditiveRegressor,
        HybridGamRegressor,
        RidgeRfResidRegressor,
        WinsorizedSparseOlsRegressor,
        SparseSignedBasisPursuitRegressor,
    )
}

assert set(STRFIT_REGRESSORS) == set(MODEL_IDS)


def wrap(family_id: str, **hyperparameters) -> BaseStrfitRegressor:
    """Construct the wrapper for a family id; unknown ids list the options."""
    if family_id not in STRFIT_REGRESSORS:
        raise ValueError(
            f"unknown model family {family_id!r}; valid ids: {', '.join(sorted(STRFIT_REGRESSORS))}"
        )
    return STRFIT_REGRESSORS[family_id](**hyperparameters)


def score(model, suite=None, evaluator: EvaluatorConfig | None = None, split: str = "dev", seed: int = 0) -> float:
    """Simulatability pass rate for a model family over a suite.

    `model` is a family id, a wrapper class, or a wrapper instance. The
    bundled suite and the offline mock evaluator are the defaults.
    """
    if isinstance(model, type) and issubclass(model, BaseStrfitRegressor):
        model_id = model.model_id
    elif isinstance(model, BaseStrfitRegressor):
        model_id = model.model_id
    else:
        model_id = str(model)
    if model_id not in STRFIT_REGRESSORS:
        raise ValueError(f"unknown model family {model_id!r}; valid ids: {', '.join(sorted(STRFIT_REGRESSORS))}")
    cases = suite if suite is not None else load_suite(default_suite_path())
    if split:
        cases = [t for t in cases if t.split == split]
    grades = run_suite(model_id, cases, evaluator or EvaluatorConfig(kind="mock-oracle"), seed=seed)
    return score_suite(grades).overall
