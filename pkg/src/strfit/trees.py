"""Tree-based fitting primitives.

Everything here minimizes sum of squared errors. Split thresholds sit at
midpoints between adjacent distinct sorted feature values, rows with
x <= threshold go left, and ties between equally good splits break toward
the lower feature index and then the lower threshold.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoValidSplitError
from .rng import Rng


@dataclass
class Stump:
    feature_index: int
    threshold: float
    left_value: float
    right_value: float
    sse_reduction: float

    def predict(self, X) -> np.ndarray:
        x = np.asarray(X, dtype=float)[:, self.feature_index]
        return np.where(x <= self.threshold, self.left_value, self.right_value)


@dataclass
class TreeNode:
    """Either a leaf (value, n_train) or an internal split node."""

    value: float | None = None
    n_train: int | None = None
    feature_index: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature_index is None

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        self._fill(X, np.arange(X.shape[0]), out)
        return out

    def _fill(self, X, idx, out):
        if self.is_leaf:
            out[idx] = self.value
            return
        mask = X[idx, self.feature_index] <= self.threshold
        self.left._fill(X, idx[mask], out)
        self.right._fill(X, idx[~mask], out)

    def n_leaves(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.n_leaves() + self.right.n_leaves()

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"value": self.value, "n_train": self.n_train}
        return {
            "feature_index": self.feature_index,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @staticmethod
    def from_dict(d: dict) -> "TreeNode":
        if "value" in d:
            return TreeNode(value=d["value"], n_train=d.get("n_train"))
        return TreeNode(
            feature_index=d["feature_index"],
            threshold=d["threshold"],
            left=TreeNode.from_dict(d["left"]),
            right=TreeNode.from_dict(d["right"]),
        )


@dataclass
class ShapeFunction:
    """Piecewise-constant per-feature effect.

    `values[i]` applies on the interval (breakpoints[i-1], breakpoints[i]],
    with the first and last values extending to -inf and +inf.
    """

    feature_index: int
    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.breakpoints = np.asarray(self.breakpoints, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more segment value than breakpoints")
        if len(self.breakpoints) > 1 and np.any(np.diff(self.breakpoints) <= 0):
            raise ValueError("breakpoints must be strictly ascending")

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.values[np.searchsorted(self.breakpoints, x, side="left")]

    def copy(self) -> "ShapeFunction":
        return ShapeFunction(self.feature_index, self.breakpoints.copy(), self.values.copy())

    def to_dict(self) -> dict:
        return {
            "feature_index": self.feature_index,
            "breakpoints": self.breakpoints.tolist(),
            "values": self.values.tolist(),
        }

    @staticmethod
    def from_dict(d: dict) -> "ShapeFunction":
        return ShapeFunction(d["feature_index"], np.array(d["breakpoints"]), np.array(d["values"]))


@dataclass
class Forest:
    trees: list
    n_trees: int
    max_depth: int
    seeds: list
    importances: np.ndarray

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        acc = np.zeros(X.shape[0])
        for tree in self.trees:
            acc += tree.predict(X)
        return acc / len(self.trees)

    def to_dict(self) -> dict:
        return {
            "trees": [t.to_dict() for t in self.trees],
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "seeds": list(self.seeds),
            "importances": self.importances.tolist(),
        }

    @staticmethod
    def from_dict(d: dict) -> "Forest":
        return Forest(
            trees=[TreeNode.from_dict(t) for t in d["trees"]],
            n_trees=d["n_trees"],
            max_depth=d["max_depth"],
            seeds=list(d["seeds"]),
            importances=np.array(d["importances"]),
        )


# ---------------------------------------------------------------------------
# split search


def _best_split_sorted(xs, rs, min_leaf=1, allow_zero=False):
    """Best SSE-reducing split of presorted (xs, rs).

    Returns (reduction, threshold, left_mean, right_mean) or None when no
    position separates distinct values with min_leaf rows on both sides, or
    (unless allow_zero) when no position strictly reduces SSE. Positions
    are scanned in threshold order, so argmax lands on the lowest
    qualifying threshold.
    """
    n = len(xs)
    if n < 2 * min_leaf:
        return None
    s1 = np.cumsum(rs)
    s2 = np.cumsum(rs * rs)
    t1, t2 = s1[-1], s2[-1]
    counts = np.arange(1, n)
    valid = xs[1:] > xs[:-1]
    if min_leaf > 1:
        valid &= (counts >= min_leaf) & (n - counts >= min_leaf)
    if not valid.any():
        return None
    left_sse = s2[:-1] - s1[:-1] ** 2 / counts
    right_sse = (t2 - s2[:-1]) - (t1 - s1[:-1]) ** 2 / (n - counts)
    parent_sse = t2 - t1 * t1 / n
    reduction = np.where(valid, parent_sse - (left_sse + right_sse), -np.inf)
    i = int(np.argmax(reduction))
    if not allow_zero and reduction[i] <= 1e-12 * max(1.0, parent_sse):
        return None
    threshold = (xs[i] + xs[i + 1]) / 2.0
    return float(reduction[i]), float(threshold), float(s1[i] / (i + 1)), float((t1 - s1[i]) / (n - i - 1))


def _search_features(X, r, features, orders=None, min_leaf=1, allow_zero=False):
    # Identical row partitions reachable through different features tie in
    # SSE exactly, but per-feature prefix sums accumulate in different
    # orders; the epsilon keeps such ties breaking toward the lower feature.
    eps = 1e-9 * max(1.0, float(np.sum(r * r)))
    best = None
    for j in features:
        order = np.argsort(X[:, j], kind="stable") if orders is None else orders[j]
        found = _best_split_sorted(X[order, j], r[order], min_leaf, allow_zero)
        if found is None:
            continue
        if best is None or found[0] > best[1] + eps:
            best = (int(j), found[0], found[1], found[2], found[3])
    return best


def fit_stump(X, y_residual) -> Stump:
    """Globally best depth-1 split over all features and all midpoints."""
    X = np.asarray(X, dtype=float)
    r = np.asarray(y_residual, dtype=float)
    if X.shape[0] < 2:
        raise NoValidSplitError("need at least 2 rows to split")
    best = _search_features(X, r, range(X.shape[1]))
    if best is None:
        raise NoValidSplitError("no split reduces SSE (constant features or constant residuals)")
    j, reduction, threshold, lmean, rmean = best
    return Stump(j, threshold, lmean, rmean, reduction)


# ---------------------------------------------------------------------------
# trees


def _leaf(y) -> TreeNode:
    return TreeNode(value=float(np.mean(y)), n_train=len(y))


def _candidates(p, rng, feature_subsample):
    if not feature_subsample:
        return range(p)
    k = math.ceil(p / 3)
    return np.sort(rng.generator.choice(p, size=k, replace=False))


def _pure(y) -> bool:
    return float(np.sum((y - np.mean(y)) ** 2)) <= 1e-12 * max(1.0, float(np.sum(y * y)))


def _grow(X, y, depth, max_depth, min_leaf, rng, feature_subsample, importances):
    if depth >= max_depth or len(y) < 2 * min_leaf or _pure(y):
        return _leaf(y)
    # zero-gain splits are allowed on impure nodes: parity-style patterns
    # only pay off one level down
    best = _search_features(
        X, y, _candidates(X.shape[1], rng, feature_subsample), min_leaf=min_leaf, allow_zero=True
    )
    if best is None:
        return _leaf(y)
    j, reduction, threshold, _, _ = best
    if importances is not None:
        importances[j] += reduction
    mask = X[:, j] <= threshold
    node = TreeNode(feature_index=j, threshold=threshold)
    node.left = _grow(X[mask], y[mask], depth + 1, max_depth, min_leaf, rng, feature_subsample, importances)
    node.right = _grow(X[~mask], y[~mask], depth + 1, max_depth, min_leaf, rng, feature_subsample, importances)
    return node


def fit_tree(X, y, max_depth: int, min_leaf: int = 1, max_leaves: int | None = None) -> TreeNode:
    """Greedy SSE-minimizing CART tree.

    Depth-first when only max_depth caps growth; best-first (largest SSE
    reduction expanded next) when max_leaves is set, so a leaf budget is
    spent where it helps most.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.shape[0] != len(y):
        raise ValueError("X and y row counts differ")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if max_leaves is None:
        return _grow(X, y, 0, max_depth, min_leaf, None, False, None)
    return _grow_best_first(X, y, max_depth, min_leaf, max_leaves)


def _grow_best_first(X, y, max_depth, min_leaf, max_leaves):
    root = _leaf(y)
    heap = []
    counter = 0

    def consider(node, idx, depth):
        nonlocal counter
        if depth >= max_depth or len(idx) < 2 * min_leaf or _pure(y[idx]):
            return
        best = _search_features(X[idx], y[idx], range(X.shape[1]), min_leaf=min_leaf, allow_zero=True)
        if best is None:
            return
        heapq.heappush(heap, (-best[1], counter, node, idx, depth, best))
        counter += 1

    consider(root, np.arange(len(y)), 0)
    n_leaves = 1
    while heap and n_leaves < max_leaves:
        _, _, node, idx, depth, best = heapq.heappop(heap)
        j, _, threshold, _, _ = best
        mask = X[idx, j] <= threshold
        node.feature_index, node.threshold = j, threshold
        node.value, node.n_train = None, None
        node.left, node.right = _leaf(y[idx[mask]]), _leaf(y[idx[~mask]])
        n_leaves += 1
        consider(node.left, idx[mask], depth + 1)
        consider(node.right, idx[~mask], depth + 1)
    return root


def fit_forest(X, y, n_trees: int = 100, max_depth: int = 5, rng: Rng | None = None) -> Forest:
    """Bagged trees: bootstrap rows per tree, ceil(p/3) candidate features
    per split, unweighted mean prediction."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    rng = rng or Rng(0)
    n = len(y)
    trees, seeds = [], []
    importances = np.zeros(X.shape[1])
    for t in range(n_trees):
        child = rng.child("tree", t)
        idx = child.generator.integers(0, n, size=n)
        seeds.append(t)
        trees.append(_grow(X[idx], y[idx], 0, max_depth, 1, child, True, importances))
    return Forest(trees=trees, n_trees=n_trees, max_depth=max_depth, seeds=seeds, importances=importances)


# ---------------------------------------------------------------------------
# additive boosting on stumps


def _insert_step(shape: ShapeFunction, threshold: float, left_value: float, right_value: float):
    """Fold a two-level step into a piecewise-constant shape in place."""
    bp, vals = shape.breakpoints, shape.values
    pos = int(np.searchsorted(bp, threshold, side="left"))
    if pos == len(bp) or bp[pos] != threshold:
        bp = np.insert(bp, pos, threshold)
        vals = np.insert(vals, pos, vals[pos])
    vals[: pos + 1] += left_value
    vals[pos + 1 :] += right_value
    shape.breakpoints, shape.values = bp, vals


def boost_stumps(X, y, rounds: int = 200):
    """Greedy additive boosting: each round folds the globally best stump
    into that feature's shape function and subtracts it from the residuals.

    Returns (mu, shapes, importances). Shapes are re-centered to mean zero
    over the training rows, with the removed means folded into mu. Stops
    early (silently) once no split reduces SSE.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    n, p = X.shape
    mu = float(np.mean(y))
    r = y - mu
    orders = [np.argsort(X[:, j], kind="stable") for j in range(p)]
    shapes = [ShapeFunction(j, np.empty(0), np.zeros(1)) for j in range(p)]
    importances = np.zeros(p)
    for _ in range(rounds):
        best = _search_features(X, r, range(p), orders=orders)
        if best is None:
            break
        j, reduction, threshold, lmean, rmean = best
        _insert_step(shapes[j], threshold, lmean, rmean)
        importances[j] += reduction
        r -= np.where(X[:, j] <= threshold, lmean, rmean)
    for j in range(p):
        m = float(np.mean(shapes[j](X[:, j])))
        shapes[j].values -= m
        mu += m
    return mu, shapes, importances


def laplacian_smooth(shape: ShapeFunction, passes: int = 3, weights=(0.6, 0.2, 0.2)) -> ShapeFunction:
    """Local averaging of adjacent segment values.

    Each pass maps v[i] -> w0*v[i] + w1*v[i-1] + w2*v[i+1] with clamped
    neighbors at the boundaries; breakpoints are unchanged.
    """
    w0, w1, w2 = weights
    if abs(w0 + w1 + w2 - 1.0) > 1e-12:
        raise ValueError("smoothing weights must sum to 1")
    v = shape.values.copy()
    for _ in range(passes):
        prev = np.concatenate(([v[0]], v[:-1]))
        nxt = np.concatenate((v[1:], [v[-1]]))
        v = w0 * v + w1 * prev + w2 * nxt
    return ShapeFunction(shape.feature_index, shape.breakpoints.copy(), v)


# ---------------------------------------------------------------------------
# cyclic bagged stump boosting (residual corrector)


@dataclass
class CyclicGam:
    """Bag-averaged additive model built by cyclic shrunken-stump boosting."""

    mus: list
    bag_shapes: list  # one list of ShapeFunction per bag
    learning_rate: float
    train_r2: float = 0.0

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        acc = np.zeros(X.shape[0])
        for mu, shapes in zip(self.mus, self.bag_shapes):
            acc += mu
            for shape in shapes:
                acc += shape(X[:, shape.feature_index])
        return acc / len(self.mus)

    def to_dict(self) -> dict:
        return {
            "mus": list(self.mus),
            "bag_shapes": [[s.to_dict() for s in shapes] for shapes in self.bag_shapes],
            "learning_rate": self.learning_rate,
            "train_r2": self.train_r2,
        }

    @staticmethod
    def from_dict(d: dict) -> "CyclicGam":
        return CyclicGam(
            mus=list(d["mus"]),
            bag_shapes=[[ShapeFunction.from_dict(s) for s in shapes] for shapes in d["bag_shapes"]],
            learning_rate=d["learning_rate"],
            train_r2=d.get("train_r2", 0.0),
        )


def cyclic_gam_boost(X, y, rounds: int = 1000, bags: int = 5, learning_rate: float = 0.1, rng: Rng | None = None) -> CyclicGam:
    """Per bag, boost a shrunken stump on every feature in fixed order each
    round; the final predictor averages the bags."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    rng = rng or Rng(0)
    n, p = X.shape
    mus, bag_shapes = [], []
    for b in range(bags):
        gen = rng.child("bag", b).generator
        idx = gen.integers(0, n, size=n)
        Xb, yb = X[idx], y[idx]
        orders = [np.argsort(Xb[:, j], kind="stable") for j in range(p)]
        mu = float(np.mean(yb))
        r = yb - mu
        shapes = [ShapeFunction(j, np.empty(0), np.zeros(1)) for j in range(p)]
        for _ in range(rounds):
            moved = False
            for j in range(p):
                order = orders[j]
                found = _best_split_sorted(Xb[order, j], r[order])
                if found is None:
                    continue
                _, threshold, lmean, rmean = found
                lv, rv = learning_rate * lmean, learning_rate * rmean
                _insert_step(shapes[j], threshold, lv, rv)
                r -= np.where(Xb[:, j] <= threshold, lv, rv)
                moved = True
            if not moved:
                break
        mus.append(mu)
        bag_shapes.append(shapes)
    model = CyclicGam(mus=mus, bag_shapes=bag_shapes, learning_rate=learning_rate)
    sst = float(np.sum((y - np.mean(y)) ** 2))
    sse = float(np.sum((y - model.predict(X)) ** 2))
    model.train_r2 = 1.0 - sse / sst if sst > 0 else 0.0
    return model
