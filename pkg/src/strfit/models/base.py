"""Shared model-zoo infrastructure: render policy, hybrid corrector config,
the FittedModel interface, and the linear-equation display helpers.

The render string is a stable contract: deterministic given the fitted
state, at most 120 characters per line, numbers at the policy's decimals,
features named by their dataset names, and exact-zero coefficients listed on
an "excluded" line. Hidden residual correctors never appear in the render
beyond a single fixed note line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..trees import CyclicGam, Forest

MAX_LINE = 120
CORRECTOR_NOTE = "(plus a small learned residual correction)"


@dataclass
class RenderPolicy:
    r2_threshold: float = 0.90
    min_importance_fraction: float = 0.01
    coefficient_decimals: int = 4

    def __post_init__(self):
        if not (0.0 < self.r2_threshold <= 1.0):
            raise ValueError("r2_threshold must be in (0, 1]")
        if not (0.0 <= self.min_importance_fraction < 1.0):
            raise ValueError("min_importance_fraction must be in [0, 1)")
        if self.coefficient_decimals < 1:
            raise ValueError("coefficient_decimals must be >= 1")

    def to_dict(self) -> dict:
        return {
            "r2_threshold": self.r2_threshold,
            "min_importance_fraction": self.min_importance_fraction,
            "coefficient_decimals": self.coefficient_decimals,
        }

    @staticmethod
    def from_dict(d: dict) -> "RenderPolicy":
        return RenderPolicy(**d)


@dataclass
class HybridConfig:
    """Residual-corrector settings for the two-stage models.

    The corrector is fitted only when the displayed backbone leaves more
    than `gate` of the training variance unexplained, and its contribution
    is scaled by `shrinkage`.
    """

    kind: str = "none"  # "forest" | "cyclic-gam" | "none"
    shrinkage: float = 1.0
    gate: float = 0.10

    def __post_init__(self):
        if self.kind not in ("forest", "cyclic-gam", "none"):
            raise ValueError(f"unknown corrector kind: {self.kind!r}")
        if not (0.0 <= self.shrinkage <= 1.0):
            raise ValueError("shrinkage must be in [0, 1]")


@dataclass
class ResidualCorrector:
    kind: str
    shrinkage: float
    model: object  # Forest or CyclicGam

    def contribution(self, X) -> np.ndarray:
        return self.shrinkage * self.model.predict(X)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "shrinkage": self.shrinkage, "model": self.model.to_dict()}

    @staticmethod
    def from_dict(d: dict) -> "ResidualCorrector":
        cls = Forest if d["kind"] == "forest" else CyclicGam
        return ResidualCorrector(kind=d["kind"], shrinkage=d["shrinkage"], model=cls.from_dict(d["model"]))


def maybe_fit_corrector(config: HybridConfig | None, X, residuals, train_r2: float, rng) -> ResidualCorrector | None:
    """Fit the configured corrector when the backbone's unexplained-variance
    fraction exceeds the gate. Shrinkage zero disables it outright so the
    backbone's predictions pass through bit-identically."""
    from ..trees import cyclic_gam_boost, fit_forest

    if config is None or config.kind == "none" or config.shrinkage == 0.0:
        return None
    if 1.0 - train_r2 <= config.gate:
        return None
    if config.kind == "forest":
        model = fit_forest(X, residuals, n_trees=100, max_depth=5, rng=rng)
    else:
        model = cyclic_gam_boost(X, residuals, rounds=1000, bags=5, learning_rate=0.1, rng=rng)
    return ResidualCorrector(kind=config.kind, shrinkage=config.shrinkage, model=model)


class FittedModel:
    """Base interface: predict on width-checked matrices, render a
    deterministic string, serialize to a plain dict."""

    family: str = ""

    def __init__(self, feature_names, policy: RenderPolicy | None = None, corrector: ResidualCorrector | None = None):
        self.feature_names = list(feature_names)
        self.policy = policy or RenderPolicy()
        self.corrector = corrector

    # -- prediction ---------------------------------------------------------
    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ValueError("predict expects a 2-D matrix")
        if X.shape[1] != len(self.feature_names):
            raise ValueError(f"expected {len(self.feature_names)} features, got {X.shape[1]}")
        out = self._predict_backbone(X)
        if self.corrector is not None:
            out = out + self.corrector.contribution(X)
        return out

    def _predict_backbone(self, X) -> np.ndarray:
        raise NotImplementedError

    # -- rendering ----------------------------------------------------------
    def render(self) -> str:
        lines = self._render_lines()
        if self.corrector is not None:
            lines = lines + [CORRECTOR_NOTE]
        return "\n".join(lines)

    def _render_lines(self) -> list:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()

    def display_complexity(self) -> int:
        """Rough count of arithmetic operations needed to evaluate the
        rendered model by hand; used by structural simulatability queries."""
        return 2 * max(1, len(self.feature_names))

    # -- serialization ------------------------------------------------------
    def params_dict(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params) -> "FittedModel":
        raise NotImplementedError


# ---------------------------------------------------------------------------
# render helpers


def fmt(value: float, decimals: int) -> str:
    v = float(value)
    if v == 0.0:  # normalize -0.0 so renders do not depend on sign of zero
        v = 0.0
    return f"{v:.{decimals}f}"


def wrap_terms(prefix: str, terms: list, indent: str = "      ", sep: str = " + ") -> list:
    """Join terms with separators, wrapping so no line exceeds MAX_LINE.
    Continuation lines start with the indent and the separator."""
    lines = [prefix + terms[0]]
    for term in terms[1:]:
        candidate = lines[-1] + sep + term
        if len(candidate) <= MAX_LINE:
            lines[-1] = candidate
        else:
            lines.append(indent + sep.lstrip() + term)
    return lines


def wrap_names(prefix: str, names: list, indent: str = "    ") -> list:
    lines = [prefix]
    for i, name in enumerate(names):
        token = name if i == len(names) - 1 else name + ","
        candidate = lines[-1] + " " + token
        if len(candidate) <= MAX_LINE:
            lines[-1] = candidate
        else:
            lines.append(indent + token)
    return lines


def linear_equation_lines(names, coefficients, intercept, decimals) -> list:
    """The `y = a*x0 + b*x1 + c` equation, skipping exact-zero coefficients."""
    terms = [
        f"{fmt(c, decimals)}*{name}"
        for name, c in zip(names, coefficients)
        if c != 0.0
    ]
    terms.append(fmt(intercept, decimals))
    return wrap_terms("  y = ", terms)


def coefficient_block_lines(names, coefficients, intercept, decimals, excluded_label) -> list:
    """The sorted coefficient list with the intercept and the excluded line."""
    coefficients = np.asarray(coefficients, dtype=float)
    lines = ["Coefficients:"]
    order = np.argsort(-np.abs(coefficients), kind="stable")
    for j in order:
        if coefficients[j] != 0.0:
            lines.append(f"  {names[j]}: {fmt(coefficients[j], decimals)}")
    lines.append(f"  intercept: {fmt(intercept, decimals)}")
    excluded = [names[j] for j in range(len(names)) if coefficients[j] == 0.0]
    if excluded:
        lines.extend(wrap_names(f"  {excluded_label}:", excluded))
    return lines


def linear_block_lines(header: str, names, coefficients, intercept, decimals) -> list:
    return (
        [header]
        + linear_equation_lines(names, coefficients, intercept, decimals)
        + [""]
        + coefficient_block_lines(names, coefficients, intercept, decimals, "Features with zero coefficients (excluded)")
    )
