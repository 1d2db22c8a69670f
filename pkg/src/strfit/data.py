"""Dataset ingestion and preprocessing.

Pipeline order: load -> ordinal-encode categoricals -> median-impute ->
subsample rows -> subsample features -> train/test split -> standardize the
target on the training split. All stages are pure functions of
(input, config, seed).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError
from .rng import Rng


@dataclass
class Column:
    """One table column. Numeric columns store NaN for missing cells;
    categorical columns keep raw string tokens until encoding."""

    name: str
    kind: str  # "numeric" | "categorical"
    numeric: np.ndarray | None = None
    raw: list | None = None

    def copy(self) -> "Column":
        return Column(
            self.name,
            self.kind,
            None if self.numeric is None else self.numeric.copy(),
            None if self.raw is None else list(self.raw),
        )


@dataclass
class Table:
    """Raw table between loading and preprocessing. Row order is preserved."""

    name: str
    feature_columns: list
    target: Column

    @property
    def n_rows(self) -> int:
        col = self.feature_columns[0] if self.feature_columns else self.target
        return len(col.numeric) if col.numeric is not None else len(col.raw)

    @property
    def n_features(self) -> int:
        return len(self.feature_columns)

    def copy(self) -> "Table":
        return Table(self.name, [c.copy() for c in self.feature_columns], self.target.copy())


@dataclass
class PreprocessConfig:
    max_samples: int = 1000
    max_features: int = 50
    test_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.test_fraction < 1.0):
            raise ValueError("test_fraction must lie strictly between 0 and 1")
        if self.max_samples < 2:
            raise ValueError("max_samples must be >= 2")
        if self.max_features < 1:
            raise ValueError("max_features must be >= 1")


@dataclass
class Dataset:
    """Numeric dataset after preprocessing.

    `features` holds all retained rows (train and test); `target` is on the
    standardized scale. `target_sd * target + target_mean` recovers the
    original units.
    """

    name: str
    features: np.ndarray
    target: np.ndarray
    feature_names: list
    train_indices: np.ndarray
    test_indices: np.ndarray
    target_mean: float
    target_sd: float

    def __post_init__(self):
        combined = np.concatenate([self.train_indices, self.test_indices])
        if len(np.unique(combined)) != len(combined) or len(combined) != len(self.target):
            raise DataError("train and test indices must partition the rows exactly")

    @property
    def train_X(self) -> np.ndarray:
        return self.features[self.train_indices]

    @property
    def train_y(self) -> np.ndarray:
        return self.target[self.train_indices]

    @property
    def test_X(self) -> np.ndarray:
        return self.features[self.test_indices]

    @property
    def test_y(self) -> np.ndarray:
        return self.target[self.test_indices]

    @staticmethod
    def from_arrays(X, y, feature_names=None, name="dataset", train_indices=None, test_indices=None) -> "Dataset":
        """Wrap in-memory arrays without any preprocessing.

        Used by the simulatability harness and the estimator bindings, where
        the caller controls the data: all rows are training rows by default
        and the target is left on its original scale.
        """
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        if X.ndim != 2 or len(y) != X.shape[0]:
            raise DataError("X must be 2-D with one target value per row")
        if feature_names is None:
            feature_names = [f"x{j}" for j in range(X.shape[1])]
        if train_indices is None:
            train_indices = np.arange(X.shape[0])
        if test_indices is None:
            test_indices = np.arange(0)
        return Dataset(
            name=name,
            features=X,
            target=y,
            feature_names=list(feature_names),
            train_indices=np.asarray(train_indices, dtype=int),
            test_indices=np.asarray(test_indices, dtype=int),
            target_mean=0.0,
            target_sd=1.0,
        )


def read_manifest(path) -> dict:
    """Read a dataset manifest: {"target": name, "categorical": [names], "name": id}.

    An optional "csv" key points at the data file, relative to the manifest.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such manifest file: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            manifest = json.load(fh)
        except json.JSONDecodeError as err:
            raise DataError(f"manifest {path} is not valid JSON: {err}") from None
    if "target" not in manifest:
        raise DataError(f"manifest {path} does not name a target column")
    manifest.setdefault("categorical", [])
    manifest.setdefault("name", path.stem)
    if "csv" in manifest:
        manifest["csv"] = str((path.parent / manifest["csv"]).resolve())
    return manifest


def load_csv(path, manifest: dict) -> Table:
    """Parse a CSV (RFC-4180, header row required) into a Table.

    Missing numeric cells become NaN; categorical cells stay as raw tokens.
    A non-parseable cell in a column not declared categorical is an error.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError(f"{path} is empty")
    header, body = rows[0], rows[1:]
    if not body:
        raise DataError(f"{path} has a header but no data rows")
    for i, row in enumerate(body):
        if len(row) != len(header):
            raise DataError(f"{path}: row {i + 2} has {len(row)} cells, expected {len(header)}")

    target_name = manifest["target"]
    if target_name not in header:
        raise DataError(f"target column {target_name!r} not found in {path}")
    categorical = set(manifest.get("categorical", []))
    unknown = categorical - set(header)
    if unknown:
        raise DataError(f"categorical columns not in header: {sorted(unknown)}")

    def build(name, cells) -> Column:
        if name in categorical:
            # Missing categorical cells stay as their own token ("").
            return Column(name, "categorical", raw=[c.strip() for c in cells])
        values = np.empty(len(cells))
        for i, cell in enumerate(cells):
            cell = cell.strip()
            if cell == "":
                values[i] = np.nan
                continue
            try:
                values[i] = float(cell)
            except ValueError:
                raise DataError(
                    f"column {name!r} row {i + 2}: cell {cell!r} is not numeric "
                    "and the column is not declared categorical"
                ) from None
        return Column(name, "numeric", numeric=values)

    columns = {name: build(name, [row[j] for row in body]) for j, name in enumerate(header)}
    target = columns.pop(target_name)
    if target.kind == "categorical":
        raise DataError("the target column must be numeric")
    return Table(manifest.get("name", path.stem), list(columns.values()), target)


def ordinal_encode(table: Table) -> Table:
    """Replace categorical columns with integer codes.

    Codes are assigned lexicographically over the category strings so the
    encoding is reproducible regardless of row order.
    """
    out = table.copy()
    for i, col in enumerate(out.feature_columns):
        if col.kind != "categorical":
            continue
        levels = sorted(set(col.raw))
        code = {tok: float(k) for k, tok in enumerate(levels)}
        out.feature_columns[i] = Column(col.name, "numeric", numeric=np.array([code[t] for t in col.raw]))
    return out


def median_impute(table: Table) -> Table:
    """Fill missing numeric cells with the column median over observed cells.

    The median of an even-count set is the midpoint of the two central
    values. A column with no observed values is an error.
    """
    out = table.copy()
    for col in out.feature_columns:
        if col.kind != "numeric":
            raise DataError(f"column {col.name!r} is still categorical; encode before imputing")
        mask = np.isnan(col.numeric)
        if not mask.any():
            continue
        if mask.all():
            raise DataError(f"column {col.name!r} has no observed values to impute from")
        col.numeric[mask] = np.median(col.numeric[~mask])
    return out


def preprocess(table: Table, config: PreprocessConfig, rng: Rng) -> Dataset:
    """Subsample, split, and standardize a fully numeric table.

    Rows are subsampled uniformly without replacement to at most
    `max_samples`, features to a seeded uniform subset of at most
    `max_features`; the split then draws `test_fraction` of the retained
    rows, and the target is standardized with training-split statistics.
    """
    for col in table.feature_columns:
        if col.kind != "numeric" or np.isnan(col.numeric).any():
            raise DataError("preprocess requires a fully numeric table with no missing cells")
    if np.isnan(table.target.numeric).any():
        raise DataError("the target column contains missing values")

    n = table.n_rows
    gen = rng.child("preprocess", table.name).generator
    if n > config.max_samples:
        keep_rows = np.sort(gen.choice(n, size=config.max_samples, replace=False))
    else:
        keep_rows = np.arange(n)
    n_kept = len(keep_rows)
    if n_kept < 5:
        raise DataError(f"only {n_kept} rows after subsampling; need at least 5")

    p = table.n_features
    if p > config.max_features:
        keep_cols = np.sort(gen.choice(p, size=config.max_features, replace=False))
    else:
        keep_cols = np.arange(p)

    X = np.column_stack([table.feature_columns[j].numeric[keep_rows] for j in keep_cols])
    y = table.target.numeric[keep_rows].astype(float)
    names = [table.feature_columns[j].name for j in keep_cols]

    n_test = int(round(n_kept * config.test_fraction))
    n_test = min(max(n_test, 1), n_kept - 1)
    perm = gen.permutation(n_kept)
    test_idx = np.sort(perm[:n_test])
    train_idx = np.sort(perm[n_test:])

    mean = float(np.mean(y[train_idx]))
    sd = float(np.std(y[train_idx]))
    if sd == 0.0 or not math.isfinite(sd):
        raise DataError("training target is constant; cannot standardize")
    y = (y - mean) / sd

    return Dataset(
        name=table.name,
        features=X,
        target=y,
        feature_names=names,
        train_indices=train_idx,
        test_indices=test_idx,
        target_mean=mean,
        target_sd=sd,
    )


def load_dataset(manifest_path, config: PreprocessConfig, rng: Rng, csv_path=None) -> Dataset:
    """Full ingestion path: manifest -> load -> encode -> impute -> preprocess."""
    manifest = read_manifest(manifest_path)
    csv_path = csv_path or manifest.get("csv")
    if csv_path is None:
        raise DataError(f"manifest {manifest_path} has no 'csv' key and no csv path was given")
    table = median_impute(ordinal_encode(load_csv(csv_path, manifest)))
    return preprocess(table, config, rng)
