"""Additive models with gated per-feature displays, and the hybrid variants
that hide a shrunken residual corrector behind the displayed backbone.

The display gate works per feature: a shape function whose least-squares
line explains more than the policy's R^2 threshold is rendered as a single
coefficient; otherwise the exact piecewise table is shown. Features holding
less than the policy's share of total importance are dropped from the
display entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from ..linear import LinearModel, fit_ridge_cv
from ..rng import Rng
from ..trees import ShapeFunction, boost_stumps, laplacian_smooth
from .base import (
    FittedModel,
    HybridConfig,
    RenderPolicy,
    fmt,
    linear_block_lines,
    maybe_fit_corrector,
    wrap_names,
    wrap_terms,
)


@dataclass
class FeatureDisplay:
    """Gate outcome for one feature: a linear line, a table, or omission."""

    kind: str  # "linear" | "table" | "omit"
    feature_index: int
    slope: float = 0.0
    offset: float = 0.0
    r2: float = 0.0
    importance_share: float = 0.0
    residual_bound: float = 0.0
    shape: ShapeFunction | None = None

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "feature_index": self.feature_index,
            "slope": self.slope,
            "offset": self.offset,
            "r2": self.r2,
            "importance_share": self.importance_share,
            "residual_bound": self.residual_bound,
        }
        if self.shape is not None:
            d["shape"] = self.shape.to_dict()
        return d

    @staticmethod
    def from_dict(d: dict) -> "FeatureDisplay":
        shape = ShapeFunction.from_dict(d["shape"]) if "shape" in d else None
        return FeatureDisplay(
            d["kind"], d["feature_index"], d["slope"], d["offset"], d["r2"],
            d["importance_share"], d["residual_bound"], shape,
        )


def linearization_gate(shape: ShapeFunction, train_feature_values, policy: RenderPolicy, importance_share: float | None = None) -> FeatureDisplay:
    """Decide how one shape function is displayed.

    Fits the least-squares line of shape(x) against x over the training
    values. Returns a linear display iff R^2 exceeds the policy threshold
    (and the importance share, when given, clears the floor); a zero-variance
    shape or a share below the floor is omitted; everything else keeps the
    exact table.
    """
    j = shape.feature_index
    x = np.asarray(train_feature_values, dtype=float)
    vals = shape(x)
    centered = vals - vals.mean()
    sst = float(np.sum(centered**2))
    if importance_share is not None and importance_share < policy.min_importance_fraction:
        return FeatureDisplay("omit", j, importance_share=importance_share, residual_bound=float(np.max(np.abs(vals), initial=0.0)))
    share = importance_share if importance_share is not None else 1.0
    if sst <= 1e-24:
        return FeatureDisplay("omit", j, importance_share=0.0, residual_bound=float(np.max(np.abs(vals), initial=0.0)))
    var_x = float(np.sum((x - x.mean()) ** 2))
    if var_x > 0:
        slope = float(np.sum((x - x.mean()) * centered) / var_x)
        offset = float(vals.mean() - slope * x.mean())
        line = slope * x + offset
        r2 = 1.0 - float(np.sum((vals - line) ** 2)) / sst
    else:
        slope, offset, r2, line = 0.0, float(vals.mean()), 0.0, np.full_like(vals, vals.mean())
    if r2 > policy.r2_threshold:
        return FeatureDisplay(
            "linear", j, slope=slope, offset=offset, r2=r2, importance_share=share,
            residual_bound=float(np.max(np.abs(vals - line))),
        )
    return FeatureDisplay("table", j, r2=r2, importance_share=share, shape=shape.copy())


def build_displays(shapes, X_train, policy: RenderPolicy) -> list:
    """Run the gate over all features with importance shares computed from
    each shape's variance over the training rows.

    Variance (not mean-absolute) shares are used deliberately: the
    small-but-wide wiggle that round-robin noise fitting leaves on an
    irrelevant feature must fall below the display floor, and only the
    squared measure suppresses it reliably."""
    X_train = np.asarray(X_train, dtype=float)
    raw = []
    for shape in shapes:
        vals = shape(X_train[:, shape.feature_index])
        raw.append(float(np.mean((vals - vals.mean()) ** 2)))
    total = sum(raw)
    shares = [m / total if total > 0 else 0.0 for m in raw]
    return [
        linearization_gate(shape, X_train[:, shape.feature_index], policy, share)
        for shape, share in zip(shapes, shares)
    ]


def table_lines(name: str, shape: ShapeFunction, decimals: int) -> list:
    lines = [f"  f({name}):"]
    bp, vals = shape.breakpoints, shape.values
    lines.append(f"    {name} <= {fmt(bp[0], decimals)}: {_signed(vals[0], decimals)}")
    for i in range(1, len(bp)):
        lines.append(
            f"    {fmt(bp[i - 1], decimals)} < {name} <= {fmt(bp[i], decimals)}: {_signed(vals[i], decimals)}"
        )
    lines.append(f"    {name} > {fmt(bp[-1], decimals)}: {_signed(vals[-1], decimals)}")
    return lines


def _signed(value: float, decimals: int) -> str:
    v = float(value)
    if v == 0.0:
        v = 0.0
    return f"{v:+.{decimals}f}"


def additive_display_lines(header: str, names, displays, intercept: float, decimals: int) -> list:
    """Standard additive render: the gated-linear equation and coefficient
    list, then one piecewise table per non-linearized feature, then the
    excluded features."""
    linear = [d for d in displays if d.kind == "linear"]
    tables = [d for d in displays if d.kind == "table"]
    omitted = [d for d in displays if d.kind == "omit"]

    terms = [f"{fmt(d.slope, decimals)}*{names[d.feature_index]}" for d in linear]
    terms.append(fmt(intercept, decimals))
    lines = [header] + wrap_terms("  y = ", terms) + ["", "Coefficients:"]
    for d in sorted(linear, key=lambda d: -abs(d.slope)):
        lines.append(f"  {names[d.feature_index]}: {fmt(d.slope, decimals)}")
    lines.append(f"  intercept: {fmt(intercept, decimals)}")
    if tables:
        lines.append("")
        lines.append("Nonlinear feature effects (piecewise corrections to add to above):")
        for d in tables:
            lines.extend(table_lines(names[d.feature_index], d.shape, decimals))
    if omitted:
        lines.extend(
            wrap_names("  Features with negligible effect (excluded):", [names[d.feature_index] for d in omitted])
        )
    return lines


def gate_summary_complexity(displays) -> int:
    ops = 1
    for d in displays:
        if d.kind == "linear":
            ops += 2
        elif d.kind == "table":
            ops += len(d.shape.values)
    return ops


class SmartAdditiveModel(FittedModel):
    family = "smart-additive"

    def __init__(self, feature_names, mu, shapes, displays, policy=None, corrector=None):
        super().__init__(feature_names, policy, corrector)
        self.mu = mu
        self.shapes = shapes
        self.displays = displays

    @property
    def intercept_display(self) -> float:
        return self.mu + sum(d.offset for d in self.displays if d.kind == "linear")

    def _predict_backbone(self, X):
        out = np.full(X.shape[0], self.mu)
        for shape in self.shapes:
            out = out + shape(X[:, shape.feature_index])
        return out

    def _render_lines(self):
        header = "Additive model (per-feature effects, smoothed):"
        return additive_display_lines(
            header, self.feature_names, self.displays, self.intercept_display, self.policy.coefficient_decimals
        )

    def display_complexity(self):
        return gate_summary_complexity(self.displays)

    def params_dict(self):
        return {
            "mu": self.mu,
            "shapes": [s.to_dict() for s in self.shapes],
            "displays": [d.to_dict() for d in self.displays],
        }

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        return cls(
            feature_names,
            params["mu"],
            [ShapeFunction.from_dict(s) for s in params["shapes"]],
            [FeatureDisplay.from_dict(d) for d in params["displays"]],
            policy,
            corrector,
        )


class HybridGamModel(SmartAdditiveModel):
    family = "hybrid-gam"


def fit_smart_additive(dataset: Dataset, rounds: int = 200, policy: RenderPolicy | None = None, seed: int = 0) -> SmartAdditiveModel:
    """Boosted-stump additive fit, Laplacian-smoothed, with the per-feature
    linearization gate applied at fit time (the gate needs training rows)."""
    policy = policy or RenderPolicy()
    X, y = dataset.train_X, dataset.train_y
    mu, shapes, _ = boost_stumps(X, y, rounds=rounds)
    smoothed = [laplacian_smooth(s) for s in shapes]
    displays = build_displays(smoothed, X, policy)
    return SmartAdditiveModel(dataset.feature_names, mu, smoothed, displays, policy)


def _backbone_r2(y, pred) -> float:
    sst = float(np.sum((y - np.mean(y)) ** 2))
    if sst == 0.0:
        return 1.0
    return 1.0 - float(np.sum((y - pred) ** 2)) / sst


def fit_hybrid_gam(dataset: Dataset, policy: RenderPolicy | None = None, hybrid: HybridConfig | None = None, rounds: int = 200, seed: int = 0) -> HybridGamModel:
    """Smart-additive display plus a hidden shrunken forest fitted on the
    additive residuals; only a fixed note line betrays its existence."""
    if hybrid is None:
        hybrid = HybridConfig(kind="forest", shrinkage=0.7, gate=0.10)
    policy = policy or RenderPolicy()
    rng = Rng(seed)
    base = fit_smart_additive(dataset, rounds=rounds, policy=policy, seed=seed)
    X, y = dataset.train_X, dataset.train_y
    backbone = base._predict_backbone(X)
    corrector = maybe_fit_corrector(hybrid, X, y - backbone, _backbone_r2(y, backbone), rng.child("corrector"))
    return HybridGamModel(dataset.feature_names, base.mu, base.shapes, base.displays, policy, corrector)


class RidgeResidModel(FittedModel):
    family = "ridge-rf-resid"

    def __init__(self, feature_names, linear: LinearModel, policy=None, corrector=None):
        super().__init__(feature_names, policy, corrector)
        self.linear = linear

    def _predict_backbone(self, X):
        return self.linear.predict(X)

    def _render_lines(self):
        d = self.policy.coefficient_decimals
        header = f"Ridge Regression (L2 regularization, alpha={self.linear.alpha:.5f} chosen by CV):"
        return linear_block_lines(header, self.feature_names, self.linear.coefficients, self.linear.intercept, d)

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
        linear = LinearModel(params["intercept"], np.array(params["coefficients"]), params["alpha"], params.get("cv_score"))
        return cls(feature_names, linear, policy, corrector)


def fit_ridge_rf_resid(dataset: Dataset, hybrid: HybridConfig | None = None, policy: RenderPolicy | None = None, seed: int = 0) -> RidgeResidModel:
    """Ridge backbone shown in full; a shrunken depth-5 forest fitted on the
    ridge residuals contributes to predictions only."""
    if hybrid is None:
        hybrid = HybridConfig(kind="forest", shrinkage=0.6, gate=0.10)
    rng = Rng(seed)
    X, y = dataset.train_X, dataset.train_y
    ridge = fit_ridge_cv(X, y, rng=rng.child("ridge"))
    backbone = ridge.predict(X)
    corrector = maybe_fit_corrector(hybrid, X, y - backbone, _backbone_r2(y, backbone), rng.child("corrector"))
    return RidgeResidModel(dataset.feature_names, ridge, policy, corrector)
