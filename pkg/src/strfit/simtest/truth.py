"""Ground-truth computation and query rendering.

The truth for each test comes either from the fitted model's predictions or
from the generator's closed-form function, per the test's truth_source.
Inverse queries (counterfactuals, crossings) are answered by a grid scan
plus bisection over a search range; tests whose inverse problem has no
solution in range are skipped with a reason instead of graded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import Rng
from .cases import TestCase

SEARCH_LO, SEARCH_HI = -3.5, 3.5
GRID_POINTS = 1401
IMPORTANCE_SAMPLE = 4096


@dataclass
class Resolved:
    query: str
    truth: object
    skip_reason: str | None = None
    target: float | None = None  # counterfactual/crossing target shown in the query


def _predictor(test: TestCase, model, f):
    if test.truth_source == "fitted-model":
        return lambda X: np.asarray(model.predict(X), dtype=float)
    return lambda X: np.asarray(f(X), dtype=float)


def _vector(point: dict, p: int) -> np.ndarray:
    x = np.zeros(p)
    for name, value in point.items():
        x[int(name[1:])] = float(value)
    return x


def _fmt_value(v: float) -> str:
    return f"{v:g}"


def _assignments(point: dict) -> str:
    return ", ".join(f"{name}={_fmt_value(float(v))}" for name, v in point.items())


def feature_importances(f, p: int, seed: int) -> np.ndarray:
    """Global effect size per feature: mean |f(X) - f(X with x_j zeroed)|
    over a fixed standard-normal sample. Exactly zero for features the
    function never reads."""
    gen = Rng(seed).child("importance").generator
    X = gen.standard_normal((IMPORTANCE_SAMPLE, p))
    base = np.asarray(f(X), dtype=float)
    out = np.zeros(p)
    for j in range(p):
        Z = X.copy()
        Z[:, j] = 0.0
        out[j] = float(np.mean(np.abs(base - np.asarray(f(Z), dtype=float))))
    return out


def _point_importances(f, x: np.ndarray) -> np.ndarray:
    """Per-feature contribution magnitude at one point (zero-anchored)."""
    p = len(x)
    base = float(f(x.reshape(1, -1))[0])
    out = np.zeros(p)
    for j in range(p):
        z = x.copy()
        z[j] = 0.0
        out[j] = abs(base - float(f(z.reshape(1, -1))[0]))
    return out


def _grid(lo: float, hi: float) -> np.ndarray:
    return np.linspace(lo, hi, GRID_POINTS)


def _profile(pred, base: np.ndarray, j: int, grid: np.ndarray) -> np.ndarray:
    X = np.tile(base, (len(grid), 1))
    X[:, j] = grid
    return pred(X)


def _bisect(pred, base, j, target, lo, hi, iters=80):
    x = base.copy()

    def g(v):
        x[j] = v
        return float(pred(x.reshape(1, -1))[0]) - target

    a, b = lo, hi
    fa = g(a)
    for _ in range(iters):
        mid = (a + b) / 2
        fm = g(mid)
        if fa * fm <= 0:
            b = mid
        else:
            a, fa = mid, fm
    return (a + b) / 2


def _solve_for_value(pred, base, j, target, lo, hi):
    """Smallest bracketing solution of pred(x_j) = target on [lo, hi], or
    None when the profile never crosses the target."""
    grid = _grid(lo, hi)
    vals = _profile(pred, base, j, grid)
    sign = np.sign(vals - target)
    exact = np.flatnonzero(np.abs(vals - target) <= 1e-12)
    if len(exact):
        return float(grid[exact[0]])
    changes = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    if len(changes) == 0:
        return None
    i = int(changes[0])
    return float(_bisect(pred, base, j, target, grid[i], grid[i + 1]))


def resolve_test(test: TestCase, model, f) -> Resolved:
    """Compute the rendered query and the ground-truth answer."""
    pred = _predictor(test, model, f)
    p = test.generator.n_features
    params = test.params
    kind = test.query_kind
    names = [f"x{j}" for j in range(p)]

    def fmt(**extra) -> str:
        slots = dict(params)
        slots.update(extra)
        if "point" in params:
            slots["assignments"] = _assignments(params["point"])
        if "base" in params and params["base"]:
            slots["base_assignments"] = _assignments(params["base"])
        if "feature" in params:
            slots["feature"] = names[params["feature"]]
        if "feature_b" in params:
            slots["feature_b"] = names[params["feature_b"]]
        return test.query_template.format(**slots)

    if kind == "point":
        x = _vector(params["point"], p)
        return Resolved(fmt(), float(pred(x.reshape(1, -1))[0]))

    if kind == "compare-points":
        a = _vector(params["point_a"], p)
        b = _vector(params["point_b"], p)
        truth = bool(pred(a.reshape(1, -1))[0] > pred(b.reshape(1, -1))[0])
        return Resolved(
            fmt(assignments_a=_assignments(params["point_a"]), assignments_b=_assignments(params["point_b"])),
            truth,
        )

    if kind in ("delta-effect", "direction"):
        base = _vector(params.get("base", {}), p)
        moved = base.copy()
        for name, change in params["changes"].items():
            moved[int(name[1:])] += float(change)
        delta = float(pred(moved.reshape(1, -1))[0] - pred(base.reshape(1, -1))[0])
        if kind == "direction":
            return Resolved(fmt(), bool(delta > 0))
        return Resolved(fmt(), delta)

    if kind == "range-effect":
        base = _vector(params.get("base", {}), p)
        j = params["feature"]
        lo_x, hi_x = base.copy(), base.copy()
        lo_x[j], hi_x[j] = float(params["from_value"]), float(params["to_value"])
        delta = float(pred(hi_x.reshape(1, -1))[0] - pred(lo_x.reshape(1, -1))[0])
        return Resolved(fmt(), delta)

    if kind in ("most-important", "second-feature", "zero-effect", "pair-importance", "ranking", "irrelevant-set", "active-set", "count-active"):
        imps = feature_importances(pred if test.truth_source == "fitted-model" else f, p, test.generator.seed)
        order = np.argsort(-imps, kind="stable")
        scale = float(imps.max())
        if scale <= 0:
            return Resolved(fmt(), None, skip_reason="no feature has any effect")
        if kind == "most-important":
            return Resolved(fmt(), names[order[0]])
        if kind == "second-feature":
            return Resolved(fmt(), names[order[1]])
        if kind == "zero-effect":
            inert = [names[j] for j in range(p) if imps[j] <= 1e-9 * scale]
            if len(inert) != 1:
                return Resolved(fmt(), None, skip_reason="expected exactly one inert feature")
            return Resolved(fmt(), inert[0])
        if kind == "pair-importance":
            i, j = params["feature"], params["feature_b"]
            return Resolved(fmt(), names[i] if imps[i] > imps[j] else names[j])
        if kind == "ranking":
            k = params.get("k", 3)
            return Resolved(fmt(), [names[j] for j in order[:k]])
        if kind == "irrelevant-set":
            return Resolved(fmt(), sorted(names[j] for j in range(p) if imps[j] <= 1e-9 * scale))
        if kind == "active-set":
            return Resolved(fmt(), sorted(names[j] for j in range(p) if imps[j] > 0.01 * scale))
        return Resolved(fmt(), float(sum(imps > 0.01 * scale)))

    if kind == "dominant-at":
        x = _vector(params["point"], p)
        imps = _point_importances(pred if test.truth_source == "fitted-model" else f, x)
        if imps.max() <= 0:
            return Resolved(fmt(), None, skip_reason="no contribution at the query point")
        return Resolved(fmt(), names[int(np.argmax(imps))])

    if kind == "counterfactual":
        base = _vector(params.get("base", {}), p)
        j = params["feature"]
        designated = base.copy()
        designated[j] = float(params["cf_value"])
        target = float(pred(designated.reshape(1, -1))[0])
        lo = float(params.get("search_lo", SEARCH_LO))
        hi = float(params.get("search_hi", SEARCH_HI))
        grid = _grid(lo, hi)
        vals = _profile(pred, base, j, grid)
        if float(vals.max() - vals.min()) <= 1e-9:
            return Resolved(fmt(target=f"{target:.4f}"), None, skip_reason="model is flat in the queried feature")
        solution = _solve_for_value(pred, base, j, target, lo, hi)
        if solution is None:
            return Resolved(fmt(target=f"{target:.4f}"), None, skip_reason="target not attainable in search range")
        return Resolved(fmt(target=f"{target:.4f}"), solution, target=target)

    if kind == "crossing":
        base = _vector(params.get("base", {}), p)
        j = params["feature"]
        target = float(params["target"])
        lo = float(params.get("search_lo", SEARCH_LO))
        hi = float(params.get("search_hi", SEARCH_HI))
        solution = _solve_for_value(pred, base, j, target, lo, hi)
        if solution is None:
            return Resolved(fmt(target=f"{target:.4f}"), None, skip_reason="no crossing in search range")
        return Resolved(fmt(target=f"{target:.4f}"), solution, target=target)

    if kind in ("argmax", "argmin"):
        base = _vector(params.get("base", {}), p)
        j = params["feature"]
        lo = float(params.get("search_lo", -3.0))
        hi = float(params.get("search_hi", 3.0))
        grid = _grid(lo, hi)
        vals = _profile(pred, base, j, grid)
        if float(vals.max() - vals.min()) <= 1e-9:
            return Resolved(fmt(), None, skip_reason="model is flat in the queried feature")
        idx = int(np.argmax(vals) if kind == "argmax" else np.argmin(vals))
        return Resolved(fmt(), float(grid[idx]))

    if kind == "output-range":
        X, _, _ = _test_sample(test, f)
        vals = pred(X)
        return Resolved(fmt(), (float(vals.min()), float(vals.max())))

    if kind == "plateau":
        j = params["feature"]
        base = _vector(params.get("base", {}), p)
        lo, hi = float(params["lo"]), float(params["hi"])
        local = _profile(pred, base, j, _grid(lo, hi))
        overall = _profile(pred, base, j, _grid(SEARCH_LO, SEARCH_HI))
        spread = float(overall.max() - overall.min())
        if spread <= 1e-9:
            return Resolved(fmt(), None, skip_reason="model is flat in the queried feature")
        truth = bool(float(local.max() - local.min()) < 0.1 * spread)
        return Resolved(fmt(), truth)

    if kind == "monotonic":
        j = params["feature"]
        base = _vector(params.get("base", {}), p)
        lo = float(params.get("search_lo", -2.0))
        hi = float(params.get("search_hi", 2.0))
        ends = _profile(pred, base, j, np.array([lo, hi]))
        return Resolved(fmt(lo=_fmt_value(lo), hi=_fmt_value(hi)), bool(ends[1] > ends[0]))

    if kind == "compactness":
        budget = int(params["budget"])
        return Resolved(fmt(), bool(model.display_complexity() <= budget))

    if kind == "slope-change":
        return Resolved(fmt(), float(params["kink"]))

    raise ValueError(f"unknown query kind: {kind!r}")


def _test_sample(test: TestCase, f):
    from .generators import generate_data

    return generate_data(test.generator)


def render_query(test: TestCase, model, f) -> str:
    return resolve_test(test, model, f).query


def compute_ground_truth(test: TestCase, model, f=None):
    """The test's expected answer (None with a reason when skipped)."""
    if f is None:
        from .generators import true_function

        f = true_function(test.generator)
    resolved = resolve_test(test, model, f)
    return resolved.truth
