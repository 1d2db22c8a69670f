import numpy as np
import pytest

from strfit.data import (
    Column,
    PreprocessConfig,
    Table,
    load_csv,
    median_impute,
    ordinal_encode,
    preprocess,
)
from strfit.errors import DataError
from strfit.rng import Rng


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


MANIFEST = {"target": "y", "categorical": [], "name": "toy"}


def test_load_csv_basic(tmp_path):
    path = write(tmp_path, "a,b,y\n1,2,3\n4,5,6\n7,8,9\n")
    table = load_csv(path, MANIFEST)
    assert table.n_rows == 3
    assert table.n_features == 2
    assert [c.name for c in table.feature_columns] == ["a", "b"]
    np.testing.assert_array_equal(table.feature_columns[0].numeric, [1, 4, 7])
    np.testing.assert_array_equal(table.target.numeric, [3, 6, 9])


def test_load_csv_preserves_missing_cells(tmp_path):
    path = write(tmp_path, "a,y\n1,0\n,1\n3,2\n")
    table = load_csv(path, MANIFEST)
    assert np.isnan(table.feature_columns[0].numeric[1])
    assert not np.isnan(table.feature_columns[0].numeric[0])


def test_load_csv_keeps_categorical_tokens(tmp_path):
    path = write(tmp_path, "c,y\nred,0\nblue,1\nred,2\n")
    table = load_csv(path, {"target": "y", "categorical": ["c"], "name": "toy"})
    assert table.feature_columns[0].kind == "categorical"
    assert table.feature_columns[0].raw == ["red", "blue", "red"]


def test_load_csv_errors(tmp_path):
    with pytest.raises(DataError):
        load_csv(tmp_path / "absent.csv", MANIFEST)
    with pytest.raises(DataError, match="target"):
        load_csv(write(tmp_path, "a,b\n1,2\n"), MANIFEST)
    with pytest.raises(DataError, match="row 3"):
        load_csv(write(tmp_path, "a,y\n1,2\n3\n"), MANIFEST)
    with pytest.raises(DataError, match="not numeric"):
        load_csv(write(tmp_path, "a,y\nred,2\n"), MANIFEST)


@pytest.mark.parametrize(
    "tokens,codes",
    [
        (["blue", "red", "blue"], [0, 1, 0]),
        (["only", "only", "only"], [0, 0, 0]),
        (["c", "a", "b"], [2, 0, 1]),
    ],
)
def test_ordinal_encode_lexicographic(tokens, codes):
    table = Table("t", [Column("c", "categorical", raw=tokens)], Column("y", "numeric", numeric=np.zeros(len(tokens))))
    out = ordinal_encode(table)
    np.testing.assert_array_equal(out.feature_columns[0].numeric, codes)
    # input table untouched
    assert table.feature_columns[0].kind == "categorical"


@pytest.mark.parametrize(
    "values,expected",
    [
        ([1, np.nan, 3], [1, 2, 3]),
        ([5, 5, np.nan, 5], [5, 5, 5, 5]),
        ([1, 2, 3, 4, np.nan], [1, 2, 3, 4, 2.5]),
    ],
)
def test_median_impute(values, expected):
    table = Table(
        "t",
        [Column("a", "numeric", numeric=np.array(values, dtype=float))],
        Column("y", "numeric", numeric=np.zeros(len(values))),
    )
    np.testing.assert_allclose(median_impute(table).feature_columns[0].numeric, expected)


def test_median_impute_all_missing_names_column():
    table = Table(
        "t",
        [Column("bad", "numeric", numeric=np.array([np.nan, np.nan]))],
        Column("y", "numeric", numeric=np.zeros(2)),
    )
    with pytest.raises(DataError, match="bad"):
        median_impute(table)


def make_numeric_table(n, p, seed=0, name="t"):
    gen = np.random.default_rng(seed)
    cols = [Column(f"f{j}", "numeric", numeric=gen.normal(size=n)) for j in range(p)]
    return Table(name, cols, Column("y", "numeric", numeric=gen.normal(size=n) * 3 + 7))


def test_preprocess_split_sizes():
    ds = preprocess(make_numeric_table(50, 3), PreprocessConfig(), Rng(1))
    assert len(ds.train_indices) == 40
    assert len(ds.test_indices) == 10


def test_preprocess_caps_rows_then_splits():
    ds = preprocess(make_numeric_table(2000, 2), PreprocessConfig(), Rng(1))
    assert len(ds.target) == 1000
    assert len(ds.train_indices) == 800
    assert len(ds.test_indices) == 200


def test_preprocess_feature_subset_reproducible():
    table = make_numeric_table(100, 60)
    a = preprocess(table, PreprocessConfig(seed=3), Rng(3))
    b = preprocess(table, PreprocessConfig(seed=3), Rng(3))
    assert len(a.feature_names) == 50
    assert a.feature_names == b.feature_names


def test_preprocess_bitwise_deterministic():
    table = make_numeric_table(300, 8)
    a = preprocess(table, PreprocessConfig(seed=9), Rng(9))
    b = preprocess(table, PreprocessConfig(seed=9), Rng(9))
    assert np.array_equal(a.features, b.features)
    assert np.array_equal(a.target, b.target)
    assert np.array_equal(a.train_indices, b.train_indices)
    assert a.target_mean == b.target_mean and a.target_sd == b.target_sd


def test_preprocess_standardization():
    table = make_numeric_table(200, 4, seed=5)
    raw_y = table.target.numeric.copy()
    ds = preprocess(table, PreprocessConfig(), Rng(5))
    train_y = ds.target[ds.train_indices]
    assert abs(train_y.mean()) < 1e-9
    assert abs(train_y.std() - 1.0) < 1e-9
    # round trip back to original units: indices refer to retained rows, and
    # with n=200 <= max_samples the retained rows are the original rows
    restored = ds.target * ds.target_sd + ds.target_mean
    np.testing.assert_allclose(restored, raw_y, atol=1e-9)


def test_preprocess_partition_and_uniqueness():
    ds = preprocess(make_numeric_table(97, 3), PreprocessConfig(), Rng(2))
    combined = np.sort(np.concatenate([ds.train_indices, ds.test_indices]))
    np.testing.assert_array_equal(combined, np.arange(97))


def test_preprocess_too_few_rows():
    with pytest.raises(DataError, match="at least 5"):
        preprocess(make_numeric_table(4, 2), PreprocessConfig(), Rng(0))


def test_preprocess_rejects_missing():
    table = make_numeric_table(20, 2)
    table.feature_columns[0].numeric[3] = np.nan
    with pytest.raises(DataError):
        preprocess(table, PreprocessConfig(), Rng(0))


def test_config_validation():
    with pytest.raises(ValueError):
        PreprocessConfig(test_fraction=0.0)
    with pytest.raises(ValueError):
        PreprocessConfig(max_samples=1)
    with pytest.raises(ValueError):
        PreprocessConfig(max_features=0)


def test_missing_categorical_cell_is_its_own_category(tmp_path):
    path = write(tmp_path, "c,y\nred,0\n,1\nblue,2\n")
    table = load_csv(path, {"target": "y", "categorical": ["c"], "name": "toy"})
    encoded = ordinal_encode(table)
    # "" sorts before "blue" and "red", so the missing cell gets code 0
    np.testing.assert_array_equal(encoded.feature_columns[0].numeric, [2, 0, 1])
    # nothing left for the imputer to touch
    out = median_impute(encoded)
    assert not np.isnan(out.feature_columns[0].numeric).any()


def test_full_pipeline_from_csv(tmp_path):
    rows = ["num,cat,y"]
    gen = np.random.default_rng(0)
    for i in range(40):
        num = "" if i % 11 == 0 else f"{gen.normal():.4f}"
        cat = ["red", "blue", "green"][i % 3]
        rows.append(f"{num},{cat},{gen.normal():.4f}")
    path = write(tmp_path, "\n".join(rows) + "\n")
    table = load_csv(path, {"target": "y", "categorical": ["cat"], "name": "mix"})
    ds = preprocess(median_impute(ordinal_encode(table)), PreprocessConfig(), Rng(0))
    assert not np.isnan(ds.features).any()
    assert ds.feature_names == ["num", "cat"]
