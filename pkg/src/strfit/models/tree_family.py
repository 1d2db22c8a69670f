"""Tree-shaped models: small rendered decision trees and the two ensemble
baselines whose render is only a feature-importance summary."""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..rng import Rng
from ..trees import Forest, ShapeFunction, TreeNode, boost_stumps, fit_forest, fit_tree
from .base import FittedModel, fmt, wrap_names


def tree_lines(node: TreeNode, names, decimals: int, indent: str = "  ") -> list:
    if node.is_leaf:
        return [f"{indent}predict {fmt(node.value, decimals)}"]
    lines = [f"{indent}if {names[node.feature_index]} <= {fmt(node.threshold, decimals)}:"]
    lines += tree_lines(node.left, names, decimals, indent + "  ")
    lines.append(f"{indent}else:")
    lines += tree_lines(node.right, names, decimals, indent + "  ")
    return lines


class TreeModel(FittedModel):
    family = "tiny-dt"
    header = "Decision tree (depth 2):"

    def __init__(self, feature_names, tree: TreeNode, policy=None):
        super().__init__(feature_names, policy, None)
        self.tree = tree

    def _predict_backbone(self, X):
        return self.tree.predict(X)

    def _render_lines(self):
        return [self.header] + tree_lines(self.tree, self.feature_names, self.policy.coefficient_decimals)

    def display_complexity(self):
        return 2 * self.tree.n_leaves() - 1

    def params_dict(self):
        return {"tree": self.tree.to_dict()}

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        return cls(feature_names, TreeNode.from_dict(params["tree"]), policy)


class Dt8Model(TreeModel):
    family = "dt8"
    header = "Decision tree (up to 8 leaves):"


class Dt20Model(TreeModel):
    family = "dt20"
    header = "Decision tree (up to 20 leaves):"


def fit_tiny_dt(dataset: Dataset, policy=None, seed: int = 0) -> TreeModel:
    tree = fit_tree(dataset.train_X, dataset.train_y, max_depth=2)
    return TreeModel(dataset.feature_names, tree, policy)


def fit_dt_leaves(dataset: Dataset, max_leaves: int, policy=None, seed: int = 0) -> TreeModel:
    tree = fit_tree(dataset.train_X, dataset.train_y, max_depth=30, max_leaves=max_leaves)
    cls = Dt8Model if max_leaves == 8 else Dt20Model
    return cls(dataset.feature_names, tree, policy)


def _importance_lines(header: str, names, importances, decimals: int) -> list:
    importances = np.asarray(importances, dtype=float)
    total = importances.sum()
    shares = importances / total if total > 0 else importances
    lines = [header, "Feature importances (share of split SSE reduction):"]
    order = np.argsort(-shares, kind="stable")
    for j in order:
        if shares[j] > 0:
            lines.append(f"  {names[j]}: {fmt(shares[j], decimals)}")
    unused = [names[j] for j in range(len(names)) if shares[j] == 0]
    if unused:
        lines.extend(wrap_names("  Features never used in a split:", unused))
    return lines


class ForestModel(FittedModel):
    family = "rf"

    def __init__(self, feature_names, forest: Forest, policy=None):
        super().__init__(feature_names, policy, None)
        self.forest = forest

    def _predict_backbone(self, X):
        return self.forest.predict(X)

    def _render_lines(self):
        header = (
            f"Random forest ({self.forest.n_trees} trees, max depth {self.forest.max_depth}); "
            "full tree structure is not shown."
        )
        return _importance_lines(header, self.feature_names, self.forest.importances, self.policy.coefficient_decimals)

    def display_complexity(self):
        return self.forest.n_trees * (2 ** self.forest.max_depth)

    def params_dict(self):
        return {"forest": self.forest.to_dict()}

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        return cls(feature_names, Forest.from_dict(params["forest"]), policy)


def fit_baseline_rf(dataset: Dataset, seed: int = 0, policy=None) -> ForestModel:
    forest = fit_forest(dataset.train_X, dataset.train_y, n_trees=100, max_depth=5, rng=Rng(seed).child("rf"))
    return ForestModel(dataset.feature_names, forest, policy)


class GbmStumpsModel(FittedModel):
    family = "gbm-stumps"

    def __init__(self, feature_names, mu: float, shapes, importances, policy=None):
        super().__init__(feature_names, policy, None)
        self.mu = mu
        self.shapes = shapes
        self.importances = np.asarray(importances, dtype=float)

    def _predict_backbone(self, X):
        out = np.full(X.shape[0], self.mu)
        for shape in self.shapes:
            out = out + shape(X[:, shape.feature_index])
        return out

    def _render_lines(self):
        header = "Boosted stump ensemble (200 rounds); full structure is not shown."
        return _importance_lines(header, self.feature_names, self.importances, self.policy.coefficient_decimals)

    def display_complexity(self):
        return sum(len(s.values) for s in self.shapes) + 1

    def params_dict(self):
        return {
            "mu": self.mu,
            "shapes": [s.to_dict() for s in self.shapes],
            "importances": self.importances.tolist(),
        }

    @classmethod
    def from_params(cls, feature_names, policy, corrector, params):
        return cls(
            feature_names,
            params["mu"],
            [ShapeFunction.from_dict(s) for s in params["shapes"]],
            params["importances"],
            policy,
        )


def fit_baseline_gbm_stumps(dataset: Dataset, rounds: int = 200, policy=None, seed: int = 0) -> GbmStumpsModel:
    mu, shapes, importances = boost_stumps(dataset.train_X, dataset.train_y, rounds=rounds)
    return GbmStumpsModel(dataset.feature_names, mu, shapes, importances, policy)
