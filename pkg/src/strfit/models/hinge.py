"""Hinge-basis regressors.

Both families expand each feature into raw-linear plus positive hinges
max(0, x - t) and negative hinges max(0, t - x) at quantile knots, then let
a CV lasso pick a sparse subset. They differ in the display: the two-stage
model collapses every hinge into one effective slope per feature (and may
hide a residual corrector behind the equation), while the table variant
renders each feature's contribution through the additive gate as either a
single coefficient or a short piecewise table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from ..linear import fit_lasso_cv
from ..rng import Rng
from ..trees import ShapeFunction
from .additive import additive_display_lines, build_displays, gate_summary_complexity
from .base import (
    FittedModel,
    HybridConfig,
    RenderPolicy,
    fmt,
    linear_block_lines,
    maybe_fit_corrector,
)


@dataclass
class HingeSpec:
    """Sparse piecewise-linear predictor over an expanded hinge basis.

    Prediction is intercept + sum_j beta[j]*x_j
    + sum_jk alpha_pos[j][k]*max(0, x_j - knots[j][k])
    + sum_jk alpha_neg[j][k]*max(0, knots[j][k] - x_j).
    """

    intercept: float
    beta: np.ndarray
    knots: list  # per feature, ascending
    alpha_pos: list  # per feature, aligned with knots
    alpha_neg: list

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=float)
        self.knots = [np.asarray(k, dtype=float) for k in self.knots]
        self.alpha_pos = [np.asarray(a, dtype=float) for a in self.alpha_pos]
        self.alpha_neg = [np.asarray(a, dtype=float) for a in self.alpha_neg]
        for k in self.knots:
            if len(k) > 1 and np.any(np.diff(k) <= 0):
                raise ValueError("knots must be strictly ascending per feature")

    @property
    def selected_mask(self) -> list:
        """Per feature: (linear selected, pos-hinge mask, neg-hinge mask)."""
        return [
            (self.beta[j] != 0.0, self.alpha_pos[j] != 0.0, self.alpha_neg[j] != 0.0)
            for j in range(len(self.beta))
        ]

    def feature_contribution(self, j: int, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = self.beta[j] * x
        for t, ap, an in zip(self.knots[j], self.alpha_pos[j], self.alpha_neg[j]):
            if ap != 0.0:
                out = out + ap * np.maximum(0.0, x - t)
            if an != 0.0:
                out = out + an * np.maximum(0.0, t - x)
        return out

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.full(X.shape[0], self.intercept)
        for j in range(len(self.beta)):
            out = out + self.feature_contribution(j, X[:, j])
        return out

    def to_dict(self) -> dict:
        return {
            "intercept": self.intercept,
            "beta": self.beta.tolist(),
            "knots": [k.tolist() for k in self.knots],
            "alpha_pos": [a.tolist() for a in self.alpha_pos],
            "alpha_neg": [a.tolist() for a in self.alpha_neg],
        }

    @staticmethod
    def from_dict(d: dict) -> "HingeSpec":
        return HingeSpec(d["intercept"], np.array(d["beta"]), d["knots"], d["alpha_pos"], d["alpha_neg"])


def quantile_knots(x, k: int) -> np.ndarray:
    """K knots at the i/(K+1) quantiles (linear interpolation), deduplicated."""
    qs = np.arange(1, k + 1) / (k + 1)
    return np.unique(np.quantile(x, qs))


def build_hinge_basis(X, k: int):
    """Expanded design matrix: all raw columns first, then per feature the
    positive and negative hinge columns at its quantile knots. Returns the
    matrix, the per-feature knots, and a column map for reading coefficients
    back into a HingeSpec."""
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    knots = [quantile_knots(X[:, j], k) for j in range(p)]
    columns = [X[:, j] for j in range(p)]
    col_map = [("linear", j, None) for j in range(p)]
    for j in range(p):
        for ki, t in enumerate(knots[j]):
            columns.append(np.maximum(0.0, X[:, j] - t))
            col_map.append(("pos", j, ki))
            columns.append(np.maximum(0.0, t - X[:, j]))
            col_map.append(("neg", j, ki))
    return np.column_stack(columns), knots, col_map


def spec_from_lasso(linear_model, knots, col_map, p: int) -> HingeSpec:
    beta = np.zeros(p)
    alpha_pos = [np.zeros(len(knots[j])) for j in range(p)]
    alpha_neg = [np.zeros(len(knots[j])) for j in range(p)]
    for coef, (kind, j, ki) in zip(linear_model.coefficients, col_map):
        if kind == "linear":
            beta[j] = coef
        elif kind == "pos":
            alpha_pos[j][ki] = coef
        else:
            alpha_neg[j][ki] = coef
    return HingeSpec(float(linear_model.intercept), beta, knots, alpha_pos, alpha_neg)


def collapse_hinges(spec: HingeSpec):
    """Fold hinge terms into effective per-feature slopes.

    A positive hinge a*max(0, x - t) adds a to the slope and -a*t to the
    intercept; a negative hinge a*max(0, t - x) adds -a to the slope and
    +a*t to the intercept. Returns (slopes, intercept, excluded feature
    indices); features whose collapsed slope is exactly zero are excluded.
    """
    p = len(spec.beta)
    slopes = np.zeros(p)
    intercept = spec.intercept
    for j in range(p):
        slope = spec.beta[j]
        for t, ap, an in zip(spec.knots[j], spec.alpha_pos[j], spec.alpha_neg[j]):
            if ap != 0.0:
                slope += ap
                intercept -= ap * t
            if an != 0.0:
                slope -= an
                intercept += an * t
        slopes[j] = slope
    excluded = [j for j in range(p) if slopes[j] == 0.0]
    return slopes, float(intercept), excluded


class HingeEbmModel(FittedModel):
    family = "hinge-ebm"

    def __init__(self, feature_names, spec: HingeSpec, alpha: float, stage1_r2: float, policy=None, corrector=None):
        super().__init__(feature_names, policy, corrector)
        self.spec = spec
        self.alpha = alpha
        self.stage1_r2 = stage1_r2

    def _predict_backbone(self, X):
        return self.spec.predict(X)

    def stage1_predict(self, X) -> np.ndarray:
        return self.spec.predict(np.asarray(X, dtype=float))

    def _render_lines(self):
        d = self.policy.coefficient_decimals
        slopes, intercept, _ = collapse_hinges(self.spec)
        header = f"Piecewise-linear model collapsed to effective slopes (lasso, alpha={self.alpha:.5f} chosen by CV):"
        return linear_block_lines(header, self.feature_names, slopes, intercept, d)

    def display_complexity(self):
        slopes, _, _ = collapse_hinges(self.spec)
        return 2 * int(np.count_nonzero(slopes)) + 1

    def params_dict(self):
        return {"spec": self.spec.to_dict(), "alpha": self.alpha, "stage1_r2": self.stage1_r2}

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        return cls(feature_names, HingeSpec.from_dict(params["spec"]), params["alpha"], params["stage1_r2"], policy, corrector)


def _train_r2(y, pred) -> float:
    sst = float(np.sum((y - np.mean(y)) ** 2))
    if sst == 0.0:
        return 1.0
    return 1.0 - float(np.sum((y - pred) ** 2)) / sst


def fit_hinge_ebm(dataset: Dataset, k: int = 2, hybrid: HybridConfig | None = None, policy: RenderPolicy | None = None, seed: int = 0) -> HingeEbmModel:
    """Stage 1: CV lasso on the hinge basis. Stage 2: when stage 1 leaves
    more than the gate's share of training variance unexplained, a cyclic
    stump booster is fitted on the residuals and added to predictions only;
    the render shows stage 1 alone, hinge-collapsed."""
    if hybrid is None:
        hybrid = HybridConfig(kind="cyclic-gam", shrinkage=1.0, gate=0.10)
    rng = Rng(seed)
    X, y = dataset.train_X, dataset.train_y
    basis, knots, col_map = build_hinge_basis(X, k)
    lasso, _ = fit_lasso_cv(basis, y, rng=rng.child("stage1"))
    spec = spec_from_lasso(lasso, knots, col_map, X.shape[1])
    stage1 = spec.predict(X)
    r2 = _train_r2(y, stage1)
    corrector = maybe_fit_corrector(hybrid, X, y - stage1, r2, rng.child("stage2"))
    return HingeEbmModel(dataset.feature_names, spec, float(lasso.alpha), r2, policy, corrector)


class HingeGamModel(FittedModel):
    family = "hinge-gam"

    def __init__(self, feature_names, spec, alpha, displays, intercept_display, policy=None):
        super().__init__(feature_names, policy, None)
        self.spec = spec
        self.alpha = alpha
        self.displays = displays
        self.intercept_display = intercept_display

    def _predict_backbone(self, X):
        return self.spec.predict(X)

    def _render_lines(self):
        header = f"Piecewise-linear additive model (lasso, alpha={self.alpha:.5f} chosen by CV):"
        return additive_display_lines(
            header, self.feature_names, self.displays, self.intercept_display, self.policy.coefficient_decimals
        )

    def display_complexity(self):
        return gate_summary_complexity(self.displays)

    def params_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "alpha": self.alpha,
            "displays": [d.to_dict() for d in self.displays],
            "intercept_display": self.intercept_display,
        }

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        from .additive import FeatureDisplay

        return cls(
            feature_names,
            HingeSpec.from_dict(params["spec"]),
            params["alpha"],
            [FeatureDisplay.from_dict(d) for d in params["displays"]],
            params["intercept_display"],
            policy,
        )


def _contribution_shape(spec: HingeSpec, j: int, x_train) -> ShapeFunction:
    """Sample a feature's piecewise-linear contribution into a
    piecewise-constant shape with breakpoints at the knots. Segment values
    are the contribution at segment midpoints; the open outer segments use
    half the median knot gap (falling back to the feature's spread)."""
    knots = spec.knots[j]
    if len(knots) == 0:
        return ShapeFunction(j, np.empty(0), np.array([0.0]))
    if len(knots) >= 2:
        pad = float(np.median(np.diff(knots))) / 2.0
    else:
        pad = float(np.std(x_train)) or 1.0
    reps = [knots[0] - pad]
    reps += [(a + b) / 2.0 for a, b in zip(knots[:-1], knots[1:])]
    reps += [knots[-1] + pad]
    values = spec.feature_contribution(j, np.asarray(reps))
    return ShapeFunction(j, knots.copy(), values)


def fit_hinge_gam(dataset: Dataset, k: int = 10, policy: RenderPolicy | None = None, seed: int = 0) -> HingeGamModel:
    """Stage-1-only hinge model whose per-feature contributions are shown
    through the linearization gate: one coefficient when a line explains the
    sampled shape, a piecewise table otherwise."""
    policy = policy or RenderPolicy()
    rng = Rng(seed)
    X, y = dataset.train_X, dataset.train_y
    basis, knots, col_map = build_hinge_basis(X, k)
    lasso, _ = fit_lasso_cv(basis, y, rng=rng.child("stage1"))
    spec = spec_from_lasso(lasso, knots, col_map, X.shape[1])
    shapes = [_contribution_shape(spec, j, X[:, j]) for j in range(X.shape[1])]
    displays = build_displays(shapes, X, policy)
    intercept_display = spec.intercept + sum(d.offset for d in displays if d.kind == "linear")
    return HingeGamModel(dataset.feature_names, spec, float(lasso.alpha), displays, float(intercept_display), policy)
