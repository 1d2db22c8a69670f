import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exhaustive_stump
from strfit.errors import NoValidSplitError
from strfit.rng import Rng
from strfit.trees import (
    ShapeFunction,
    Stump,
    boost_stumps,
    cyclic_gam_boost,
    fit_forest,
    fit_stump,
    fit_tree,
    laplacian_smooth,
)


def test_stump_step_data():
    x = np.linspace(-2, 2, 20).reshape(-1, 1)
    y = np.where(x[:, 0] <= 0, -1.0, 1.0)
    stump = fit_stump(x, y)
    assert stump.feature_index == 0
    lower = x[:, 0][x[:, 0] <= 0].max()
    upper = x[:, 0][x[:, 0] > 0].min()
    assert stump.threshold == pytest.approx((lower + upper) / 2)
    assert stump.left_value == pytest.approx(-1)
    assert stump.right_value == pytest.approx(1)
    assert stump.sse_reduction > 0


def test_stump_constant_target_errors():
    x = np.arange(10, dtype=float).reshape(-1, 1)
    with pytest.raises(NoValidSplitError):
        fit_stump(x, np.full(10, 3.0))


def test_stump_constant_features_error():
    X = np.ones((8, 2))
    with pytest.raises(NoValidSplitError):
        fit_stump(X, np.arange(8, dtype=float))


def test_stump_matches_exhaustive_search():
    gen = np.random.default_rng(0)
    for _ in range(100):
        n = int(gen.integers(4, 16))
        X = gen.normal(size=(n, 2))
        r = gen.normal(size=n)
        stump = fit_stump(X, r)
        red, j, t, lv, rv = exhaustive_stump(X, r)
        assert stump.feature_index == j
        assert stump.threshold == pytest.approx(t, abs=1e-12)
        assert stump.sse_reduction == pytest.approx(red, rel=1e-9, abs=1e-9)


def test_stump_tie_breaks_low_feature_low_threshold():
    # two identical features: both admit the same best split
    x = np.array([0.0, 1.0, 2.0, 3.0])
    X = np.column_stack([x, x])
    y = np.array([0.0, 0.0, 1.0, 1.0])
    stump = fit_stump(X, y)
    assert stump.feature_index == 0
    assert stump.threshold == pytest.approx(1.5)


def test_tree_depth2_leaf_cap():
    gen = np.random.default_rng(1)
    X = gen.normal(size=(100, 3))
    y = gen.normal(size=100)
    tree = fit_tree(X, y, max_depth=2)
    assert tree.n_leaves() <= 4
    assert tree.depth() <= 2


def test_tree_constant_target_single_leaf():
    X = np.random.default_rng(2).normal(size=(20, 2))
    tree = fit_tree(X, np.full(20, 5.0), max_depth=3)
    assert tree.is_leaf
    assert tree.value == pytest.approx(5.0)


def test_tree_xor_depth2_exact():
    X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    y = np.array([1.0, -1.0, -1.0, 1.0])
    tree = fit_tree(X, y, max_depth=2)
    np.testing.assert_allclose(tree.predict(X), y, atol=1e-12)


def test_tree_leaf_values_are_training_means():
    gen = np.random.default_rng(3)
    X = gen.normal(size=(60, 2))
    y = gen.normal(size=60)
    tree = fit_tree(X, y, max_depth=3)

    def check(node, idx):
        if node.is_leaf:
            assert node.value == pytest.approx(np.mean(y[idx]), abs=1e-12)
            assert node.n_train == len(idx)
            return
        mask = X[idx, node.feature_index] <= node.threshold
        check(node.left, idx[mask])
        check(node.right, idx[~mask])

    check(tree, np.arange(60))


def test_tree_max_leaves_cap():
    gen = np.random.default_rng(4)
    X = gen.normal(size=(200, 4))
    y = np.sin(X[:, 0] * 2) + gen.normal(scale=0.1, size=200)
    for cap in (8, 20):
        tree = fit_tree(X, y, max_depth=30, max_leaves=cap)
        assert tree.n_leaves() <= cap
        # a meaningful budget actually gets used on structured data
        assert tree.n_leaves() >= cap // 2


def test_forest_single_full_tree_recovers_step():
    x = np.linspace(-1, 1, 30).reshape(-1, 1)
    y = np.where(x[:, 0] <= 0.2, -1.0, 2.0)
    # seed pinned so the bootstrap keeps rows adjacent to the step
    forest = fit_forest(x, y, n_trees=1, max_depth=10, rng=Rng(0))
    np.testing.assert_array_equal(forest.predict(x), y)


def test_smooth_preserves_mean():
    gen = np.random.default_rng(21)
    for _ in range(50):
        k = int(gen.integers(1, 25))
        shape = ShapeFunction(0, np.arange(k, dtype=float), gen.normal(size=k + 1) * 5)
        out = laplacian_smooth(shape)
        assert np.mean(out.values) == pytest.approx(np.mean(shape.values), abs=1e-12)


def test_forest_deterministic():
    gen = np.random.default_rng(5)
    X = gen.normal(size=(80, 3))
    y = X[:, 0] + gen.normal(scale=0.2, size=80)
    a = fit_forest(X, y, n_trees=10, max_depth=4, rng=Rng(42))
    b = fit_forest(X, y, n_trees=10, max_depth=4, rng=Rng(42))
    assert np.array_equal(a.predict(X), b.predict(X))


def test_forest_beats_single_tree_on_average():
    # averaging many depth-5 staircases fits a smooth multi-feature signal
    # better in-sample than one depth-5 tree; regime pinned empirically
    wins = []
    for seed in range(10):
        gen = np.random.default_rng(300 + seed)
        X = gen.normal(size=(300, 4))
        y = 2 * X[:, 0] + np.abs(X[:, 1]) + np.sin(2 * X[:, 2]) + gen.normal(scale=0.3, size=300)
        forest = fit_forest(X, y, n_trees=100, max_depth=5, rng=Rng(seed))
        tree = fit_tree(X, y, max_depth=5)
        wins.append(np.mean((y - forest.predict(X)) ** 2) - np.mean((y - tree.predict(X)) ** 2))
    assert np.mean(wins) <= 0


def test_boost_single_round_reproduces_stump():
    x = np.linspace(-2, 2, 40).reshape(-1, 1)
    y = np.where(x[:, 0] <= 0, -1.0, 1.0)
    mu, shapes, _ = boost_stumps(x, y, rounds=1)
    assert len(shapes[0].breakpoints) == 1
    np.testing.assert_allclose(mu + shapes[0](x[:, 0]), y, atol=1e-12)


def test_boost_training_identity():
    gen = np.random.default_rng(6)
    X = gen.normal(size=(100, 3))
    y = 2 * X[:, 0] - X[:, 1] + gen.normal(scale=0.3, size=100)
    mu, shapes, _ = boost_stumps(X, y, rounds=50)
    total = mu + sum(shapes[j](X[:, j]) for j in range(3))
    # the shape decomposition re-sums per-round contributions, so only float
    # association noise separates it from the running boosted prediction
    running = y - _final_residuals(X, y, rounds=50)
    np.testing.assert_allclose(total, running, atol=1e-9)


def _final_residuals(X, y, rounds):
    mu = y.mean()
    r = y - mu
    for _ in range(rounds):
        try:
            stump = fit_stump(X, r)
        except NoValidSplitError:
            break
        r = r - stump.predict(X)
    return r


def test_boost_centering_invariant():
    gen = np.random.default_rng(7)
    X = gen.normal(size=(150, 4))
    y = X @ np.array([1.0, 0.5, -2.0, 0.0]) + gen.normal(scale=0.2, size=150)
    _, shapes, _ = boost_stumps(X, y, rounds=80)
    for j in range(4):
        assert abs(np.mean(shapes[j](X[:, j]))) < 1e-9


def test_boost_recovers_linear_slope():
    gen = np.random.default_rng(8)
    X = gen.normal(size=(300, 2))
    y = 2 * X[:, 0] + 0.5 * X[:, 1] + gen.normal(scale=0.3, size=300)
    _, shapes, _ = boost_stumps(X, y, rounds=200)
    f0 = shapes[0](X[:, 0])
    slope = np.polyfit(X[:, 0], f0, 1)[0]
    assert 1.7 <= slope <= 2.3


def test_boost_early_stops_on_constant():
    X = np.ones((10, 2))
    mu, shapes, _ = boost_stumps(X, np.arange(10, dtype=float), rounds=5)
    assert mu == pytest.approx(4.5)
    assert all(len(s.breakpoints) == 0 for s in shapes)


def test_shape_interval_convention():
    shape = ShapeFunction(0, np.array([0.0, 1.0]), np.array([10.0, 20.0, 30.0]))
    np.testing.assert_array_equal(shape(np.array([-5, 0.0, 0.5, 1.0, 1.5])), [10, 10, 20, 20, 30])


def test_smooth_constant_invariant():
    shape = ShapeFunction(0, np.array([0.0, 1.0]), np.array([2.5, 2.5, 2.5]))
    out = laplacian_smooth(shape, passes=7)
    np.testing.assert_array_equal(out.values, shape.values)


def test_smooth_spike():
    shape = ShapeFunction(0, np.array([0.0, 1.0]), np.array([0.0, 1.0, 0.0]))
    out = laplacian_smooth(shape, passes=1)
    np.testing.assert_allclose(out.values, [0.2, 0.6, 0.2])


def test_smooth_requires_unit_weights():
    shape = ShapeFunction(0, np.array([0.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        laplacian_smooth(shape, weights=(0.5, 0.2, 0.2))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=2, max_size=30))
def test_smooth_total_variation_non_increasing(values):
    bp = np.arange(len(values) - 1, dtype=float)
    shape = ShapeFunction(0, bp, np.array(values))
    out = laplacian_smooth(shape, passes=1)
    tv_before = np.sum(np.abs(np.diff(shape.values)))
    tv_after = np.sum(np.abs(np.diff(out.values)))
    assert tv_after <= tv_before + 1e-9 * max(1.0, tv_before)


def test_cyclic_zero_residuals_zero_predictor():
    X = np.random.default_rng(9).normal(size=(50, 3))
    model = cyclic_gam_boost(X, np.zeros(50), rounds=10, bags=3, rng=Rng(0))
    np.testing.assert_array_equal(model.predict(X), np.zeros(50))


def test_cyclic_single_bag_single_round_structure():
    gen = np.random.default_rng(10)
    X = gen.normal(size=(60, 2))
    y = np.where(X[:, 0] <= 0, -1.0, 1.0)
    model = cyclic_gam_boost(X, y, rounds=1, bags=1, learning_rate=0.1, rng=Rng(1))
    assert len(model.bag_shapes) == 1
    # one shrunken pass: each feature contributes at most one breakpoint
    assert all(len(s.breakpoints) <= 1 for s in model.bag_shapes[0])


def test_cyclic_outfits_plain_boost_on_friedman_style_data():
    # the cyclic corrector's stump budget (rounds * features per bag) beats
    # 200 single stumps once n is large enough that those 200 stop
    # memorizing; regime pinned after an empirical sweep
    gen = np.random.default_rng(12)
    X = gen.normal(size=(800, 5))
    y = (
        10 * np.sin(np.pi * X[:, 0] * X[:, 1])
        + 20 * (X[:, 2] - 0.5) ** 2
        + 10 * X[:, 3]
        + 5 * X[:, 4]
        + gen.normal(scale=1.0, size=800)
    )
    corrector = cyclic_gam_boost(X, y, rounds=1000, bags=5, rng=Rng(2))
    mu, shapes, _ = boost_stumps(X, y, rounds=200)
    plain = mu + sum(shapes[j](X[:, j]) for j in range(5))
    sst = np.sum((y - y.mean()) ** 2)
    plain_r2 = 1 - np.sum((y - plain) ** 2) / sst
    assert corrector.train_r2 > plain_r2


def test_cyclic_deterministic():
    gen = np.random.default_rng(12)
    X = gen.normal(size=(60, 2))
    y = X[:, 0] + gen.normal(scale=0.1, size=60)
    a = cyclic_gam_boost(X, y, rounds=20, bags=2, rng=Rng(5))
    b = cyclic_gam_boost(X, y, rounds=20, bags=2, rng=Rng(5))
    assert np.array_equal(a.predict(X), b.predict(X))


def test_stump_predict():
    stump = Stump(feature_index=1, threshold=0.5, left_value=-1.0, right_value=3.0, sse_reduction=1.0)
    X = np.array([[0, 0.4], [0, 0.5], [0, 0.6]])
    np.testing.assert_array_equal(stump.predict(X), [-1, -1, 3])
