"""Plain linear-equation models: the OLS / ridge / lasso baselines and the
winsorized sparse OLS, whose render is the exact predictor (plus, for the
winsorized variant, the input clip bounds)."""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..linear import LinearModel, fit_lasso_cv, fit_ols, fit_ridge_cv
from ..rng import Rng
from .base import FittedModel, fmt, linear_block_lines, RenderPolicy


class LinearEquationModel(FittedModel):
    """Base for models whose render is exactly `y = sum(coef * x) + b`."""

    header_template = "Linear model:"

    def __init__(self, feature_names, linear: LinearModel, policy=None):
        super().__init__(feature_names, policy, None)
        self.linear = linear

    def _predict_backbone(self, X):
        return self.linear.predict(X)

    def _header(self) -> str:
        if "{alpha" in self.header_template:
            return self.header_template.format(alpha=self.linear.alpha)
        return self.header_template

    def _render_lines(self):
        d = self.policy.coefficient_decimals
        return linear_block_lines(self._header(), self.feature_names, self.linear.coefficients, self.linear.intercept, d)

    def display_complexity(self):
        return 2 * int(np.count_nonzero(self.linear.coefficients)) + 1

    def params_dict(self):
        return {
            "intercept": self.linear.intercept,
            "coefficients": self.linear.coefficients.tolist(),
            "alpha": self.linear.alpha,
            "cv_score": self.linear.cv_score,
        }

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        linear = LinearModel(params["intercept"], np.array(params["coefficients"]), params.get("alpha"), params.get("cv_score"))
        return cls(feature_names, linear, policy)


class OlsModel(LinearEquationModel):
    family = "ols"
    header_template = "Linear Regression (OLS):"


class RidgeModel(LinearEquationModel):
    family = "ridge"
    header_template = "Ridge Regression (L2 regularization, alpha={alpha:.5f} chosen by CV):"


class LassoModel(LinearEquationModel):
    family = "lasso"
    header_template = "Lasso Regression (L1 regularization, alpha={alpha:.5f} chosen by CV):"


def fit_baseline_ols(dataset: Dataset, seed: int = 0) -> OlsModel:
    return OlsModel(dataset.feature_names, fit_ols(dataset.train_X, dataset.train_y))


def fit_baseline_ridge(dataset: Dataset, seed: int = 0) -> RidgeModel:
    model = fit_ridge_cv(dataset.train_X, dataset.train_y, rng=Rng(seed).child("ridge"))
    return RidgeModel(dataset.feature_names, model)


def fit_baseline_lasso(dataset: Dataset, seed: int = 0) -> LassoModel:
    model, _ = fit_lasso_cv(dataset.train_X, dataset.train_y, rng=Rng(seed).child("lasso"))
    return LassoModel(dataset.feature_names, model)


class WinsorizedSparseModel(FittedModel):
    family = "winsorized-sparse-ols"

    def __init__(self, feature_names, linear: LinearModel, clip_lo, clip_hi, policy=None):
        super().__init__(feature_names, policy, None)
        self.linear = linear
        self.clip_lo = np.asarray(clip_lo, dtype=float)
        self.clip_hi = np.asarray(clip_hi, dtype=float)

    def _predict_backbone(self, X):
        return self.linear.predict(np.clip(X, self.clip_lo, self.clip_hi))

    def _render_lines(self):
        d = self.policy.coefficient_decimals
        header = "Sparse linear model on clipped inputs (top features by CV lasso, OLS refit):"
        lines = linear_block_lines(header, self.feature_names, self.linear.coefficients, self.linear.intercept, d)
        lines.append("")
        lines.append("Inputs are clipped to these bounds before the equation applies:")
        for j in range(len(self.feature_names)):
            if self.linear.coefficients[j] != 0.0:
                lines.append(
                    f"  {self.feature_names[j]}: [{fmt(self.clip_lo[j], d)}, {fmt(self.clip_hi[j], d)}]"
                )
        return lines

    def display_complexity(self):
        return 3 * int(np.count_nonzero(self.linear.coefficients)) + 1

    def params_dict(self):
        return {
            "intercept": self.linear.intercept,
            "coefficients": self.linear.coefficients.tolist(),
            "clip_lo": self.clip_lo.tolist(),
            "clip_hi": self.clip_hi.tolist(),
        }

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        linear = LinearModel(params["intercept"], np.array(params["coefficients"]))
        return cls(feature_names, linear, params["clip_lo"], params["clip_hi"], policy)


def fit_winsorized_sparse_ols(dataset: Dataset, top_k: int = 8, policy: RenderPolicy | None = None, seed: int = 0) -> WinsorizedSparseModel:
    """Clip each feature to its training 1st/99th percentiles, let a CV
    lasso choose, keep the top_k coefficients by magnitude, and refit OLS on
    that support with clipped inputs."""
    X, y = dataset.train_X, dataset.train_y
    lo = np.quantile(X, 0.01, axis=0)
    hi = np.quantile(X, 0.99, axis=0)
    Xc = np.clip(X, lo, hi)
    lasso, _ = fit_lasso_cv(Xc, y, rng=Rng(seed).child("lasso"))
    nonzero = np.flatnonzero(lasso.coefficients)
    order = nonzero[np.argsort(-np.abs(lasso.coefficients[nonzero]), kind="stable")]
    support = np.sort(order[:top_k])
    coefficients = np.zeros(X.shape[1])
    if len(support):
        refit = fit_ols(Xc[:, support], y)
        coefficients[support] = refit.coefficients
        intercept = refit.intercept
    else:
        intercept = float(np.mean(y))
    linear = LinearModel(intercept=float(intercept), coefficients=coefficients)
    return WinsorizedSparseModel(dataset.feature_names, linear, lo, hi, policy)
