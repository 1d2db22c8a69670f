"""Parity between the wrappers and the core: identical predictions and
byte-identical render strings on a fixed five-dataset corpus, for every
family, plus a cross-check through the CLI surface."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

import strfit_bindings as sb
from strfit.data import Dataset, PreprocessConfig, load_dataset
from strfit.models import MODEL_IDS, fit_model
from strfit.rng import Rng

PARITY_SPECS = [
    ("linear", 120, 3, 0.1, 901),
    ("kinked", 160, 4, 0.3, 902),
    ("interaction", 140, 3, 0.2, 903),
    ("step", 120, 2, 0.15, 904),
    ("absolute", 150, 4, 0.2, 905),
]


def corpus_dataset(kind, n, p, noise, seed):
    gen = np.random.default_rng(seed)
    X = gen.normal(size=(n, p))
    if kind == "linear":
        y = 2.0 * X[:, 0] - 1.0 * X[:, 1]
    elif kind == "kinked":
        y = 2 * X[:, 0] + 0.5 * X[:, 1] + np.where(X[:, 2] > 0, 1.5 * X[:, 2], 0.3 * X[:, 2])
    elif kind == "interaction":
        y = X[:, 0] + X[:, 1] + 0.8 * X[:, 0] * X[:, 1]
    elif kind == "step":
        y = np.where(X[:, 0] <= 0.3, -1.0, 1.5)
    else:
        y = 1.5 * np.abs(X[:, 0]) - X[:, 1]
    y = y + gen.normal(scale=noise, size=n)
    return X, y


@pytest.fixture(scope="module")
def corpus():
    return [corpus_dataset(*spec) for spec in PARITY_SPECS]


def test_every_family_matches_core_on_parity_corpus(corpus):
    for model_id in sorted(MODEL_IDS):
        wrapper_cls = sb.STRFIT_REGRESSORS[model_id]
        for k, (X, y) in enumerate(corpus):
            wrapper = wrapper_cls(seed=11).fit(X, y)
            core = fit_model(model_id, Dataset.from_arrays(X, y, name=wrapper_cls.__name__), seed=11)
            np.testing.assert_allclose(wrapper.predict(X[:25]), core.predict(X[:25]), atol=1e-9)
            assert str(wrapper) == core.render(), (model_id, k)


def test_unfitted_predict_raises():
    with pytest.raises(sb.NotFittedError):
        sb.OlsRegressor().predict(np.zeros((2, 2)))
    assert "unfitted" in str(sb.OlsRegressor())


def test_wrap_unknown_family_lists_ids():
    with pytest.raises(ValueError, match="valid ids"):
        sb.wrap("perceptron")
    wrapper = sb.wrap("tiny-dt")
    assert isinstance(wrapper, sb.TinyDtRegressor)


def test_wrap_passes_hyperparameters(corpus):
    X, y = corpus[1]
    wrapper = sb.wrap("hinge-ebm", seed=3, k=1).fit(X, y)
    assert all(len(knots) <= 1 for knots in wrapper.fitted_model.spec.knots)


def test_get_set_params_round_trip():
    wrapper = sb.SmartAdditiveRegressor(seed=5, rounds=50)
    assert wrapper.get_params()["rounds"] == 50
    wrapper.set_params(rounds=20, seed=6)
    assert wrapper.seed == 6
    assert wrapper.hyperparameters["rounds"] == 20


def test_save_load_round_trip(tmp_path, corpus):
    X, y = corpus[0]
    wrapper = sb.RidgeRegressor(seed=1).fit(X, y)
    path = tmp_path / "model.json"
    wrapper.save(path)
    clone = sb.RidgeRegressor.load(path)
    np.testing.assert_array_equal(clone.predict(X[:10]), wrapper.predict(X[:10]))
    assert str(clone) == str(wrapper)


def test_score_convenience_runs_dev_suite():
    value = sb.score(sb.OlsRegressor, split="dev")
    assert 0.5 <= value <= 1.0
    with pytest.raises(ValueError, match="valid ids"):
        sb.score("perceptron")


def test_load_suite_reexport(tmp_path):
    from strfit.simtest.cases import default_suite_path

    cases = sb.load_suite(default_suite_path())
    assert len(cases) == 200


def test_cli_cross_component_parity(tmp_path):
    # the wrapper fitted on the preprocessed training split must agree with
    # the CLI's fit + predict on the same manifest, seed, and config
    gen = np.random.default_rng(77)
    n = 150
    X = gen.normal(size=(n, 3))
    y = 3 * X[:, 0] + 2 * X[:, 1] + gen.normal(scale=0.1, size=n)
    csv_path = tmp_path / "fig.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x0", "x1", "x2", "y"])
        for i in range(n):
            writer.writerow([repr(float(v)) for v in X[i]] + [repr(float(y[i]))])
    manifest = tmp_path / "fig.manifest.json"
    manifest.write_text(json.dumps({"name": "fig", "target": "y", "categorical": [], "csv": "fig.csv"}))

    seed = 4
    dataset = load_dataset(manifest, PreprocessConfig(seed=seed), Rng(seed))
    wrapper = sb.RidgeRegressor(seed=seed, feature_names=dataset.feature_names)
    wrapper.fit(dataset.train_X, dataset.train_y)

    model_file = tmp_path / "model.json"
    fit_proc = subprocess.run(
        [sys.executable, "-m", "strfit.cli", "--seed", str(seed), "fit", "--manifest", str(manifest),
         "--model", "ridge", "--out", str(model_file)],
        capture_output=True, text=True, check=True,
    )
    assert fit_proc.stdout == str(wrapper) + "\n"

    points = tmp_path / "points.csv"
    with open(points, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(dataset.feature_names)
        for row in dataset.test_X:
            writer.writerow([repr(float(v)) for v in row])
    predict_proc = subprocess.run(
        [sys.executable, "-m", "strfit.cli", "predict", "--model-file", str(model_file), "--data", str(points)],
        capture_output=True, text=True, check=True,
    )
    cli_preds = np.array([float(line) for line in predict_proc.stdout.strip().split("\n")])
    np.testing.assert_allclose(cli_preds, wrapper.predict(dataset.test_X), atol=1e-9)
