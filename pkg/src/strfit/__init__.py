"""strfit: interpretable tabular regressors whose fitted state renders as a
string an agent can simulate, plus the evaluation harness around them
(simulatability tests, RMSE rank benchmarking, Pareto reporting, and the
append-only memory CSV a search loop consumes)."""

from .data import Dataset, PreprocessConfig, load_csv, load_dataset, median_impute, ordinal_encode, preprocess
from .rng import Rng

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "PreprocessConfig",
    "Rng",
    "load_csv",
    "load_dataset",
    "median_impute",
    "ordinal_encode",
    "preprocess",
    "__version__",
]
