"""Command-line interface.

Subcommands: fit, render, predict, bench, interp, frontier, loop-eval, and
suite validate. Exit codes: 0 success, 2 usage or configuration error,
3 data error, 4 model error, 5 evaluator error, 1 unexpected failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from hashlib import sha256
from pathlib import Path

import numpy as np

from .bench import MetricsRow, append_memory, emit_report, pareto_frontier, run_bench, run_interp
from .bench.runner import RunConfig
from .data import PreprocessConfig, load_dataset
from .errors import DataError, EvaluatorError, StrfitError, SuiteError
from .models import MODEL_IDS, fit_model, load_model, model_to_dict, save_model
from .rng import Rng
from .simtest import EvaluatorConfig, load_suite, score_suite, validate_suite
from .simtest.cases import default_suite_path

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_MODEL = 4
EXIT_EVALUATOR = 5


def _evaluator_for(args, config: RunConfig | None) -> EvaluatorConfig:
    base = config.evaluator if config else EvaluatorConfig()
    if args.evaluator == "mock":
        return EvaluatorConfig(kind="mock-oracle")
    if args.evaluator == "http":
        if base.kind != "http-llm":
            raise EvaluatorError("--evaluator http needs evaluator settings (endpoint, model) in the run config")
        return base
    return base


def _load_config(args) -> RunConfig:
    if not args.config:
        raise SuiteError("this subcommand needs --config pointing at a run-config JSON file")
    config = RunConfig.from_file(args.config)
    if args.seed is not None:
        config.seed = args.seed
    return config


def cmd_fit(args) -> int:
    config = PreprocessConfig(seed=args.seed or 0)
    dataset = load_dataset(args.manifest, config, Rng(args.seed or 0), csv_path=args.data)
    model = fit_model(args.model, dataset, seed=args.seed or 0)
    if args.out:
        meta = {
            "dataset": dataset.name,
            "target_mean": dataset.target_mean,
            "target_sd": dataset.target_sd,
            "seed": args.seed or 0,
        }
        save_model(model, args.out, meta=meta)
    print(model.render())
    return EXIT_OK


def cmd_render(args) -> int:
    print(load_model(args.model_file).render())
    return EXIT_OK


def cmd_predict(args) -> int:
    model = load_model(args.model_file)
    with open(args.data, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header != model.feature_names:
        raise DataError(f"prediction CSV columns {header} do not match the model's features {model.feature_names}")
    X = np.array([[float(c) for c in row] for row in body])
    for value in model.predict(X):
        print(repr(float(value)))
    return EXIT_OK


def cmd_bench(args) -> int:
    config = _load_config(args)
    report = run_bench(config)
    paths = emit_report(report, config.output_dir)
    print(f"wrote {paths['report']}")
    for model_id, rank in zip(report.model_ids, report.normalized_mean_rank):
        print(f"  {model_id}: normalized mean rank {rank:.4f}")
    return EXIT_OK


def cmd_interp(args) -> int:
    config = _load_config(args)
    evaluator = _evaluator_for(args, config)
    suite = config.load_suite_cases()
    if args.split:
        suite = [t for t in suite if t.split == args.split]
    scores, grades, breakdown = run_interp(config.models, suite, evaluator, seed=config.seed)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    from .bench.report import atomic_write_csv

    atomic_write_csv(out / "interp.csv", ["model", "interp_score"], [[m, repr(float(s))] for m, s in sorted(scores.items())])
    atomic_write_csv(
        out / "grades.csv",
        ["model", "test_id", "category", "split", "pass", "reason", "truth", "parsed"],
        [
            [m, g.test_id, g.category, g.split, str(g.passed).lower(), g.reason or "", json.dumps(g.truth), json.dumps(g.parsed)]
            for m, model_grades in sorted(grades)
            for g in model_grades
        ],
    )
    atomic_write_csv(
        out / "interp_categories.csv",
        ["model", "category", "attempted", "passed", "rate"],
        [
            [m, cat, b["attempted"], b["passed"], repr(b["rate"])]
            for m, cats in sorted(breakdown.items())
            for cat, b in sorted(cats.items())
        ],
    )
    for model_id, score in sorted(scores.items()):
        print(f"  {model_id}: interpretability {score:.4f}")
    print(f"wrote {out / 'interp.csv'}")
    return EXIT_OK


def cmd_frontier(args) -> int:
    report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    interp = {}
    with open(args.interp, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            if row:
                interp[row[0]] = float(row[1])
    models = [m for m in report["model_ids"] if m in interp]
    ranks = {m: report["normalized_mean_rank"][report["model_ids"].index(m)] for m in models}
    flags = pareto_frontier([(ranks[m], interp[m]) for m in models])
    from .bench.report import atomic_write_csv

    atomic_write_csv(
        args.out,
        ["model", "normalized_mean_rank", "interp_score", "pareto", "family"],
        [[m, repr(ranks[m]), repr(interp[m]), str(bool(f)).lower(), m] for m, f in zip(models, flags)],
    )
    for m, f in zip(models, flags):
        marker = "*" if f else " "
        print(f" {marker} {m}: rank {ranks[m]:.4f} interp {interp[m]:.4f}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_loop_eval(args) -> int:
    config = _load_config(args)
    if args.model not in MODEL_IDS:
        raise StrfitError(f"unknown model id {args.model!r}; valid ids: {', '.join(sorted(MODEL_IDS))}")
    evaluator = _evaluator_for(args, config)
    # rank the candidate within the config's model pool so the recorded
    # metric is comparable across loop iterations
    pool = list(dict.fromkeys(list(config.models) + [args.model]))
    config.models = pool
    report = run_bench(config)
    suite = [t for t in config.load_suite_cases() if t.split == "dev"]
    scores, _, _ = run_interp([args.model], suite, evaluator, seed=config.seed)
    if args.model in report.model_ids:
        rank = float(report.normalized_mean_rank[report.model_ids.index(args.model)])
    else:
        rank = 1.0  # no successful fit anywhere: worst possible
    row = MetricsRow(
        model=args.model,
        idea=args.idea,
        rmse_mean_rank=rank,
        interp_dev_score=float(scores[args.model]),
        timestamp=datetime.now(timezone.utc).isoformat(),
        code_digest=sha256(json.dumps({"model": args.model, "config": config.digest()}).encode()).hexdigest()[:16],
    )
    memory = args.memory or str(Path(config.output_dir) / "memory.csv")
    Path(memory).parent.mkdir(parents=True, exist_ok=True)
    append_memory(memory, row)
    print(f"{args.model}: rank {row.rmse_mean_rank:.4f} interp {row.interp_dev_score:.4f} -> {memory}")
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.action != "validate":
        raise SuiteError(f"unknown suite action: {args.action!r}")
    path = args.path or default_suite_path()
    cases = load_suite(path)
    counts = validate_suite(cases)
    print(f"{path}: {len(cases)} tests ({counts['dev']} dev / {counts['heldout']} heldout)")
    for category, count in counts["by_category"].items():
        print(f"  {category}: {count}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strfit", description="Interpretable regressors with string renderers.")
    parser.add_argument("--seed", type=int, default=None, help="override the run seed")
    parser.add_argument("--config", default=None, help="run-config JSON file")
    parser.add_argument("--evaluator", choices=("mock", "http"), default=None, help="evaluator backend override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit one model on one dataset; print the render")
    p.add_argument("--manifest", required=True)
    p.add_argument("--data", default=None, help="CSV path (defaults to the manifest's csv key)")
    p.add_argument("--model", required=True, choices=sorted(MODEL_IDS))
    p.add_argument("--out", default=None, help="write the serialized model JSON here")
    p.set_defaults(fn=cmd_fit)

    p = sub.add_parser("render", help="print a serialized model's render string")
    p.add_argument("--model-file", required=True)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("predict", help="predict from a serialized model on a feature CSV")
    p.add_argument("--model-file", required=True)
    p.add_argument("--data", required=True)
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("bench", help="run the predictive benchmark")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("interp", help="run simulatability tests for the configured models")
    p.add_argument("--split", choices=("dev", "heldout"), default=None)
    p.set_defaults(fn=cmd_interp)

    p = sub.add_parser("frontier", help="combine bench + interp outputs into a Pareto scatter CSV")
    p.add_argument("--report", required=True)
    p.add_argument("--interp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_frontier)

    p = sub.add_parser("loop-eval", help="evaluate one candidate and append to the memory CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--idea", default="")
    p.add_argument("--memory", default=None)
    p.set_defaults(fn=cmd_loop_eval)

    p = sub.add_parser("suite", help="suite file utilities")
    p.add_argument("action", choices=("validate",))
    p.add_argument("--path", default=None)
    p.set_defaults(fn=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (DataError,) as err:
        print(f"data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except EvaluatorError as err:
        print(f"evaluator error: {err}", file=sys.stderr)
        return EXIT_EVALUATOR
    except SuiteError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (StrfitError, ValueError) as err:
        print(f"model error: {err}", file=sys.stderr)
        return EXIT_MODEL
    except Exception as err:  # pragma: no cover - catch-all for the CLI boundary
        print(f"unexpected error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
