"""Benchmark orchestration: RMSE rank aggregation, Pareto frontier,
memory-CSV persistence, and report emission."""

from .memory import MetricsRow, append_memory, read_memory
from .pareto import pareto_frontier
from .ranks import aggregate_ranks, rank_matrix
from .report import BenchReport, emit_report
from .runner import RunConfig, run_bench, run_interp

__all__ = [
    "BenchReport",
    "MetricsRow",
    "RunConfig",
    "aggregate_ranks",
    "append_memory",
    "emit_report",
    "pareto_frontier",
    "rank_matrix",
    "read_memory",
    "run_bench",
    "run_interp",
]
