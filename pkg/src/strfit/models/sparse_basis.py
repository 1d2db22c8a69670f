"""Forward-selected symbolic regression over a signed basis.

The candidate dictionary holds raw features, positive/negative hinges at
three quantile knots, squares, and the five feature products most
correlated with the target. Terms enter greedily by absolute residual
correlation, a small ridge refit follows each entry, and the final
coefficients are rounded to three decimals when rounding costs almost no
training fit. The render is the single resulting equation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from .base import FittedModel, RenderPolicy, wrap_terms

REFIT_ALPHA = 1e-4
MIN_R2_GAIN = 1e-4
ROUNDING_R2_BUDGET = 0.005


@dataclass
class BasisTerm:
    kind: str  # "linear" | "hinge_pos" | "hinge_neg" | "square" | "interaction"
    j: int
    j2: int | None = None
    knot: float | None = None

    def column(self, X) -> np.ndarray:
        x = X[:, self.j]
        if self.kind == "linear":
            return x
        if self.kind == "square":
            return x * x
        if self.kind == "interaction":
            return x * X[:, self.j2]
        if self.kind == "hinge_pos":
            return np.maximum(0.0, x - self.knot)
        return np.maximum(0.0, self.knot - x)

    def name(self, names) -> str:
        if self.kind == "linear":
            return names[self.j]
        if self.kind == "square":
            return f"{names[self.j]}^2"
        if self.kind == "interaction":
            return f"{names[self.j]}*{names[self.j2]}"
        if self.kind == "hinge_pos":
            if self.knot < 0:
                return f"max(0, {names[self.j]} + {-self.knot:.4f})"
            return f"max(0, {names[self.j]} - {self.knot:.4f})"
        return f"max(0, {self.knot:.4f} - {names[self.j]})"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "j": self.j, "j2": self.j2, "knot": self.knot}

    @staticmethod
    def from_dict(d: dict) -> "BasisTerm":
        return BasisTerm(d["kind"], d["j"], d.get("j2"), d.get("knot"))


def _candidate_terms(X, y) -> list:
    n, p = X.shape
    terms = [BasisTerm("linear", j) for j in range(p)]
    for j in range(p):
        # quantile knots rounded to display precision so that the printed
        # equation is the exact predictor
        knots = np.unique(np.round(np.quantile(X[:, j], [0.25, 0.5, 0.75]), 4))
        for t in knots:
            terms.append(BasisTerm("hinge_pos", j, knot=float(t)))
            terms.append(BasisTerm("hinge_neg", j, knot=float(t)))
    terms.extend(BasisTerm("square", j) for j in range(p))
    pairs = []
    yc = y - y.mean()
    ynorm = float(np.linalg.norm(yc))
    for i in range(p):
        for j in range(i + 1, p):
            prod = X[:, i] * X[:, j]
            pc = prod - prod.mean()
            denom = float(np.linalg.norm(pc)) * ynorm
            score = abs(float(pc @ yc)) / denom if denom > 0 else 0.0
            pairs.append((score, i, j))
    pairs.sort(key=lambda t: (-t[0], t[1], t[2]))
    terms.extend(BasisTerm("interaction", i, j2=j) for _, i, j in pairs[:5])
    return terms


def _ridge_refit(S, y):
    Sc = S - S.mean(axis=0)
    yc = y - y.mean()
    beta = np.linalg.solve(Sc.T @ Sc + REFIT_ALPHA * np.eye(S.shape[1]), Sc.T @ yc)
    intercept = float(y.mean() - S.mean(axis=0) @ beta)
    return beta, intercept


def _r2(y, pred) -> float:
    sst = float(np.sum((y - y.mean()) ** 2))
    if sst == 0.0:
        return 1.0
    return 1.0 - float(np.sum((y - pred) ** 2)) / sst


class SparseBasisModel(FittedModel):
    family = "sparse-signed-basis-pursuit"

    def __init__(self, feature_names, terms, coefficients, intercept, rounded: bool, policy=None):
        super().__init__(feature_names, policy, None)
        self.terms = terms
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.intercept = float(intercept)
        self.rounded = rounded

    def _predict_backbone(self, X):
        out = np.full(X.shape[0], self.intercept)
        for term, coef in zip(self.terms, self.coefficients):
            out = out + coef * term.column(X)
        return out

    def _render_lines(self):
        decimals = 3 if self.rounded else 6
        parts = [f"{coef:.{decimals}f}*{term.name(self.feature_names)}" for term, coef in zip(self.terms, self.coefficients)]
        parts.append(f"{self.intercept:.{decimals}f}")
        return ["Symbolic equation (forward-selected signed basis):"] + wrap_terms("  y = ", parts)

    def display_complexity(self):
        return 2 * len(self.terms) + 1

    def params_dict(self):
        return {
            "terms": [t.to_dict() for t in self.terms],
            "coefficients": self.coefficients.tolist(),
            "intercept": self.intercept,
            "rounded": self.rounded,
        }

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        return cls(
            feature_names,
            [BasisTerm.from_dict(t) for t in params["terms"]],
            params["coefficients"],
            params["intercept"],
            params["rounded"],
            policy,
        )


def fit_sparse_signed_basis_pursuit(dataset: Dataset, max_terms: int = 8, policy: RenderPolicy | None = None, seed: int = 0) -> SparseBasisModel:
    X, y = dataset.train_X, dataset.train_y
    candidates = _candidate_terms(X, y)
    columns = [t.column(X) for t in candidates]

    selected: list = []
    design: list = []
    r = y - y.mean()
    best_r2 = 0.0
    beta, intercept = np.zeros(0), float(y.mean())
    rnorm_guard = 1e-12
    while len(selected) < max_terms:
        scores = []
        rc = r - r.mean()
        rnorm = float(np.linalg.norm(rc))
        if rnorm < rnorm_guard:
            break
        for i, col in enumerate(columns):
            if i in selected:
                scores.append(-1.0)
                continue
            cc = col - col.mean()
            denom = float(np.linalg.norm(cc)) * rnorm
            scores.append(abs(float(cc @ rc)) / denom if denom > 0 else 0.0)
        pick = int(np.argmax(scores))
        if scores[pick] <= 0.0:
            break
        trial_design = design + [columns[pick]]
        S = np.column_stack(trial_design)
        trial_beta, trial_intercept = _ridge_refit(S, y)
        trial_r2 = _r2(y, trial_intercept + S @ trial_beta)
        if trial_r2 - best_r2 < MIN_R2_GAIN:
            break
        selected.append(pick)
        design = trial_design
        beta, intercept, best_r2 = trial_beta, trial_intercept, trial_r2
        r = y - (intercept + S @ beta)

    terms = [candidates[i] for i in selected]
    if not terms:
        return SparseBasisModel(dataset.feature_names, [], np.zeros(0), float(np.mean(y)), True, policy)

    S = np.column_stack(design)
    rounded_beta = np.round(beta, 3)
    rounded_intercept = round(intercept, 3)
    r2_rounded = _r2(y, rounded_intercept + S @ rounded_beta)
    if best_r2 - r2_rounded < ROUNDING_R2_BUDGET:
        return SparseBasisModel(dataset.feature_names, terms, rounded_beta, rounded_intercept, True, policy)
    return SparseBasisModel(dataset.feature_names, terms, beta, intercept, False, policy)
