import csv
import json
import threading

import numpy as np
import pytest

from oracles import brute_force_frontier
from strfit.bench import (
    MetricsRow,
    aggregate_ranks,
    append_memory,
    emit_report,
    pareto_frontier,
    rank_matrix,
    read_memory,
    run_bench,
    run_interp,
)
from strfit.bench.report import BenchReport, report_digest
from strfit.bench.runner import RunConfig
from strfit.data import PreprocessConfig
from strfit.simtest import EvaluatorConfig, default_suite


# ---------------------------------------------------------------------------
# rank aggregation


def test_aggregate_ranks_two_models_two_datasets():
    rmse = np.array([[0.5, 0.4], [0.9, 0.8]])
    np.testing.assert_allclose(aggregate_ranks(rmse), [0.5, 1.0])


def test_aggregate_ranks_tie_average():
    rmse = np.array([[0.5], [0.5], [0.9]])
    ranks = rank_matrix(rmse)
    np.testing.assert_allclose(ranks[:, 0], [1.5, 1.5, 3.0])


def test_aggregate_ranks_permutation_invariant():
    gen = np.random.default_rng(0)
    rmse = gen.uniform(size=(5, 7))
    base = aggregate_ranks(rmse)
    perm = gen.permutation(7)
    np.testing.assert_allclose(aggregate_ranks(rmse[:, perm]), base)


def test_aggregate_ranks_failures_worst():
    rmse = np.array([[0.5, np.nan], [0.9, 0.8], [np.inf, 0.7]])
    ranks = rank_matrix(rmse)
    assert ranks[0, 1] == 3.0
    assert ranks[2, 0] == 3.0
    np.testing.assert_allclose(ranks[:, 0], [1.0, 2.0, 3.0])


def test_aggregate_ranks_hand_computed_matrices():
    # twenty constructed matrices including ties, checked against a direct
    # per-dataset computation
    gen = np.random.default_rng(1)
    for _ in range(20):
        m, d = int(gen.integers(2, 6)), int(gen.integers(1, 5))
        rmse = np.round(gen.uniform(size=(m, d)), 1)  # rounding forces ties
        expected = np.zeros(m)
        for col in range(d):
            vals = rmse[:, col]
            for i in range(m):
                less = np.sum(vals < vals[i])
                equal = np.sum(vals == vals[i])
                expected[i] += less + (equal + 1) / 2.0
        expected /= d * m
        np.testing.assert_allclose(aggregate_ranks(rmse), expected, atol=1e-12)


def test_lowering_rmse_never_hurts():
    gen = np.random.default_rng(2)
    rmse = gen.uniform(size=(4, 5))
    base = aggregate_ranks(rmse)[2]
    better = rmse.copy()
    better[2, 3] *= 0.5
    assert aggregate_ranks(better)[2] <= base + 1e-12


def test_best_model_rank_is_one_over_pool():
    rmse = np.array([[0.1, 0.2, 0.1], [0.5, 0.6, 0.2], [0.7, 0.9, 0.8], [0.9, 1.0, 0.9]])
    assert aggregate_ranks(rmse)[0] == pytest.approx(1 / 4)


# ---------------------------------------------------------------------------
# pareto


def test_pareto_single_point():
    np.testing.assert_array_equal(pareto_frontier([(0.4, 0.5)]), [True])


def test_pareto_simple_domination():
    flags = pareto_frontier([(0.2, 0.5), (0.3, 0.4)])
    np.testing.assert_array_equal(flags, [True, False])


def test_pareto_equal_points_both_kept():
    flags = pareto_frontier([(0.2, 0.5), (0.2, 0.5)])
    np.testing.assert_array_equal(flags, [True, True])


def test_pareto_matches_brute_force_on_random_pools():
    gen = np.random.default_rng(3)
    for _ in range(100):
        pts = [(float(r), float(v)) for r, v in gen.uniform(size=(50, 2))]
        np.testing.assert_array_equal(pareto_frontier(pts), brute_force_frontier(pts))


def test_pareto_permutation_invariant():
    gen = np.random.default_rng(4)
    pts = [(float(r), float(v)) for r, v in gen.uniform(size=(30, 2))]
    flags = pareto_frontier(pts)
    perm = gen.permutation(30)
    flags_perm = pareto_frontier([pts[i] for i in perm])
    np.testing.assert_array_equal(flags_perm, flags[perm])


# ---------------------------------------------------------------------------
# memory csv


def test_memory_append_and_read(tmp_path):
    path = tmp_path / "memory.csv"
    row = MetricsRow("cand-1", "ridge with, commas \"quoted\"", 0.25, 0.7, "2026-01-01T00:00:00", "abc123")
    append_memory(path, row)
    append_memory(path, MetricsRow("cand-2", "idea", 0.5, 0.62, "2026-01-01T00:01:00", "def456"))
    rows = read_memory(path)
    assert [r.model for r in rows] == ["cand-1", "cand-2"]
    assert rows[0].idea == 'ridge with, commas "quoted"'
    assert rows[0].rmse_mean_rank == 0.25
    # header written exactly once
    text = path.read_text()
    assert text.count("model,idea") == 1


def test_memory_concurrent_appends_stay_parseable(tmp_path):
    path = tmp_path / "memory.csv"

    def work(k):
        for i in range(10):
            append_memory(path, MetricsRow(f"m{k}-{i}", "x" * 50, 0.1, 0.2, "t", "d"))

    threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    rows = read_memory(path)
    assert len(rows) == 40
    assert len({r.model for r in rows}) == 40


# ---------------------------------------------------------------------------
# bench runner (on in-memory synthetic datasets)


def synthetic_datasets(k=2, n=120):
    from strfit.data import Dataset

    out = []
    for d in range(k):
        gen = np.random.default_rng(40 + d)
        X = gen.normal(size=(n, 3))
        y = (d + 1.0) * X[:, 0] - X[:, 1] + gen.normal(scale=0.3, size=n)
        train = np.arange(0, int(n * 0.8))
        test = np.arange(int(n * 0.8), n)
        out.append(Dataset.from_arrays(X, y, name=f"synth{d}", train_indices=train, test_indices=test))
    return out


def config_for(models, tmp_path, **kw):
    return RunConfig(datasets=[], models=models, output_dir=str(tmp_path / "out"), **kw)


def test_run_bench_perfect_model_zero_rmse(tmp_path):
    from strfit.data import Dataset

    x = np.linspace(-2, 2, 60).reshape(-1, 1)
    ds = Dataset.from_arrays(
        x, 2 * x[:, 0], name="exact", train_indices=np.arange(40), test_indices=np.arange(40, 60)
    )
    report = run_bench(config_for(["ols"], tmp_path), datasets=[ds])
    assert report.rmse[0, 0] == pytest.approx(0.0, abs=1e-9)


def test_run_bench_constant_predictor_unit_rmse(tmp_path):
    from strfit.data import Dataset

    gen = np.random.default_rng(5)
    n = 4000
    y = gen.normal(size=n)
    y = (y - y[: int(n * 0.8)].mean()) / y[: int(n * 0.8)].std()
    X = np.zeros((n, 1))  # constant feature: every model collapses to the mean
    ds = Dataset.from_arrays(X, y, name="noise", train_indices=np.arange(int(n * 0.8)), test_indices=np.arange(int(n * 0.8), n))
    report = run_bench(config_for(["ols"], tmp_path), datasets=[ds])
    assert report.rmse[0, 0] == pytest.approx(1.0, abs=0.05)


def test_run_bench_ranks_and_failures(tmp_path):
    report = run_bench(config_for(["ols", "tiny-dt"], tmp_path), datasets=synthetic_datasets())
    assert report.rmse.shape == (2, 2)
    assert np.all(np.isfinite(report.rmse))
    # linear data: OLS beats a depth-2 tree on both datasets
    np.testing.assert_allclose(report.normalized_mean_rank, [0.5, 1.0])
    assert report.failures == []


def test_run_bench_deterministic(tmp_path):
    config = config_for(["ols", "ridge"], tmp_path, seed=5)
    a = run_bench(config, datasets=synthetic_datasets())
    b = run_bench(config, datasets=synthetic_datasets())
    da, db = a.to_dict(), b.to_dict()
    da.pop("timestamp"), db.pop("timestamp")
    assert da == db
    assert report_digest(a.to_dict()) == report_digest(b.to_dict())


def test_emit_report_files(tmp_path):
    report = run_bench(config_for(["ols", "ridge"], tmp_path), datasets=synthetic_datasets())
    report.interp_scores = {"ols": 0.7, "ridge": 0.6}
    report.pareto = {"ols": True, "ridge": False}
    paths = emit_report(report, tmp_path / "out")
    for key in ("report", "ranks", "interp", "scatter"):
        assert paths[key].exists(), key
    doc = json.loads(paths["report"].read_text())
    assert doc["schema_version"] == 1
    assert doc["report_digest"] == report_digest(doc)
    with open(paths["scatter"]) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["model", "normalized_mean_rank", "interp_score", "pareto", "family"]
    assert len(rows) == 3


def test_run_bench_records_failures_and_excludes_dead_models(tmp_path, monkeypatch, capsys):
    import strfit.bench.runner as runner

    real_fit = runner.fit_model

    def flaky_fit(model_id, dataset, seed=0, **kw):
        if model_id == "ridge":
            raise RuntimeError("synthetic failure")
        return real_fit(model_id, dataset, seed=seed, **kw)

    monkeypatch.setattr(runner, "fit_model", flaky_fit)
    report = run_bench(config_for(["ols", "ridge"], tmp_path), datasets=synthetic_datasets())
    assert report.model_ids == ["ols"]
    assert any("synthetic failure" in reason for _, _, reason in report.failures)
    assert "excluding models" in capsys.readouterr().err


def test_run_bench_partial_failure_gets_worst_rank(tmp_path, monkeypatch):
    import strfit.bench.runner as runner

    real_fit = runner.fit_model

    def flaky_fit(model_id, dataset, seed=0, **kw):
        if model_id == "ridge" and dataset.name == "synth1":
            raise RuntimeError("boom")
        return real_fit(model_id, dataset, seed=seed, **kw)

    monkeypatch.setattr(runner, "fit_model", flaky_fit)
    report = run_bench(config_for(["ols", "ridge"], tmp_path), datasets=synthetic_datasets())
    j = report.dataset_names.index("synth1")
    i = report.model_ids.index("ridge")
    assert not np.isfinite(report.rmse[i, j])
    assert report.ranks[i, j] == 2.0  # pool size


def test_run_bench_time_budget(tmp_path, monkeypatch):
    import time as time_mod

    import strfit.bench.runner as runner

    real_fit = runner.fit_model

    def slow_fit(model_id, dataset, seed=0, **kw):
        time_mod.sleep(0.05)
        return real_fit(model_id, dataset, seed=seed, **kw)

    monkeypatch.setattr(runner, "fit_model", slow_fit)
    config = config_for(["ols"], tmp_path, time_budget=0.01)
    report = run_bench(config, datasets=synthetic_datasets(k=1))
    assert report.model_ids == []  # every cell timed out, model dropped
    assert any("budget" in reason for _, _, reason in report.failures)


def test_run_interp_scores(tmp_path):
    suite = [t for t in default_suite() if t.split == "dev"][:10]
    scores, grades, breakdown = run_interp(["ols"], suite, EvaluatorConfig(kind="mock-oracle"), seed=0)
    assert 0.0 <= scores["ols"] <= 1.0
    assert len(grades[0][1]) == 10
    assert breakdown["ols"]


def test_runconfig_validation_and_digest(tmp_path):
    with pytest.raises(ValueError, match="unknown model ids"):
        RunConfig(datasets=[], models=["nope"])
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"models": ["ols"], "seed": 3, "preprocess": {"max_samples": 500}}))
    config = RunConfig.from_file(cfg)
    assert config.seed == 3
    assert config.preprocess.max_samples == 500
    assert config.digest() == RunConfig.from_file(cfg).digest()
