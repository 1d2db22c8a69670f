"""Run configuration and the bench / interpretability orchestration."""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from hashlib import sha256
from pathlib import Path

import numpy as np

from ..data import PreprocessConfig, load_dataset
from ..errors import DataError
from ..models import MODEL_IDS, fit_model
from ..rng import Rng
from ..simtest import EvaluatorConfig, load_suite, run_suite, score_suite
from ..simtest.cases import default_suite_path
from .ranks import aggregate_ranks, rank_matrix
from .report import BenchReport


@dataclass
class RunConfig:
    datasets: list  # manifest paths
    models: list
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    evaluator: EvaluatorConfig = field(default_factory=EvaluatorConfig)
    suite_path: str | None = None  # None -> bundled default suite
    seed: int = 0
    output_dir: str = "strfit-out"
    parallelism: int = 1
    time_budget: float = 120.0

    def __post_init__(self):
        unknown = [m for m in self.models if m not in MODEL_IDS]
        if unknown:
            raise ValueError(f"unknown model ids in config: {unknown}; valid: {sorted(MODEL_IDS)}")

    @staticmethod
    def from_file(path) -> "RunConfig":
        path = Path(path)
        raw = json.loads(path.read_text(encoding="utf-8"))
        here = path.parent

        def resolve(p):
            return str(p) if Path(p).is_absolute() else str(here / p)

        return RunConfig(
            datasets=[resolve(p) for p in raw.get("datasets", [])],
            models=raw.get("models", list(MODEL_IDS)),
            preprocess=PreprocessConfig(**raw.get("preprocess", {})),
            evaluator=EvaluatorConfig.from_dict(raw["evaluator"]) if "evaluator" in raw else EvaluatorConfig(),
            suite_path=resolve(raw["suite"]) if raw.get("suite") else None,
            seed=raw.get("seed", 0),
            output_dir=raw.get("output_dir", "strfit-out"),
            parallelism=raw.get("parallelism", 1),
            time_budget=raw.get("time_budget", 120.0),
        )

    def digest(self) -> str:
        doc = {
            "datasets": list(self.datasets),
            "models": list(self.models),
            "preprocess": vars(self.preprocess),
            "evaluator": self.evaluator.to_dict(),
            "suite": self.suite_path,
            "seed": self.seed,
            "parallelism": self.parallelism,
            "time_budget": self.time_budget,
        }
        return sha256(json.dumps(doc, sort_keys=True).encode("utf-8")).hexdigest()

    def load_suite_cases(self) -> list:
        return load_suite(self.suite_path if self.suite_path else default_suite_path())


def _load_datasets(config: RunConfig) -> list:
    datasets = []
    seen = set()
    for manifest in config.datasets:
        ds = load_dataset(manifest, config.preprocess, Rng(config.seed))
        if ds.name in seen:
            raise DataError(f"duplicate dataset name: {ds.name}")
        seen.add(ds.name)
        datasets.append(ds)
    return datasets


def _fit_cell(model_id, dataset, seed, budget):
    start = time.monotonic()
    model = fit_model(model_id, dataset, seed=seed)
    pred = model.predict(dataset.test_X)
    elapsed = time.monotonic() - start
    if budget and elapsed > budget:
        raise TimeoutError(f"cell exceeded the {budget:.0f}s budget ({elapsed:.1f}s)")
    return float(np.sqrt(np.mean((dataset.test_y - pred) ** 2)))


def run_bench(config: RunConfig, datasets: list | None = None) -> BenchReport:
    """Fit every model on every dataset's training split and collect the
    test RMSE (standardized target scale). Failed cells are recorded and
    ranked worst rather than aborting; a model with no successful cell is
    dropped from the pool with a warning."""
    datasets = datasets if datasets is not None else _load_datasets(config)
    if not datasets:
        raise DataError("no datasets configured")
    models = list(config.models)
    rmse = np.full((len(models), len(datasets)), np.nan)
    failures = []

    def run_one(i, j):
        seed = Rng(config.seed).child("cell", models[i], datasets[j].name).generator.integers(0, 2**31)
        try:
            return _fit_cell(models[i], datasets[j], int(seed), config.time_budget)
        except Exception as err:  # failure path: worst rank, not an abort
            failures.append((models[i], datasets[j].name, f"{type(err).__name__}: {err}"))
            return np.nan

    cells = [(i, j) for i in range(len(models)) for j in range(len(datasets))]
    if config.parallelism > 1:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            results = list(pool.map(lambda c: run_one(*c), cells))
        for (i, j), value in zip(cells, results):
            rmse[i, j] = value
    else:
        for i, j in cells:
            rmse[i, j] = run_one(i, j)

    alive = [i for i in range(len(models)) if np.isfinite(rmse[i]).any()]
    if len(alive) < len(models):
        dropped = [models[i] for i in range(len(models)) if i not in alive]
        print(f"warning: excluding models with no successful fits: {dropped}", file=sys.stderr)
        rmse = rmse[alive]
        models = [models[i] for i in alive]

    return BenchReport(
        model_ids=models,
        dataset_names=[d.name for d in datasets],
        rmse=rmse,
        ranks=rank_matrix(rmse) if models else np.zeros((0, len(datasets))),
        normalized_mean_rank=aggregate_ranks(rmse) if models else np.zeros(0),
        failures=sorted(failures),
        seed=config.seed,
        timestamp=datetime.now(timezone.utc).isoformat(),
        config_digest=config.digest(),
    )


def run_interp(model_ids: list, suite: list, evaluator: EvaluatorConfig, seed: int = 0):
    """Per-model interpretability scores over the given suite.

    Returns (scores, per_model_grades, per_model_category_breakdown)."""
    scores, all_grades, breakdown = {}, [], {}
    for model_id in model_ids:
        grades = run_suite(model_id, suite, evaluator, seed=seed)
        report = score_suite(grades)
        scores[model_id] = report.overall
        breakdown[model_id] = report.per_category
        all_grades.append((model_id, grades))
    return scores, all_grades, breakdown
