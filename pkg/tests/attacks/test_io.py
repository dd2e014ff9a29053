"""Tests for labelled window files and dataset manifests."""

import json

import numpy as np
import pytest

from adsb_sentinel.attacks import (
    label_counts,
    read_windows_csv,
    write_dataset_manifest,
    write_windows_csv,
)
from adsb_sentinel.data import FeatureWindow, SchemaError


def _windows():
    rng = np.random.default_rng(0)
    return [
        FeatureWindow(rng.normal(size=(4, 6)) * 1000.0, "AAA-abc123-0", 0, label=1),
        FeatureWindow(rng.normal(size=(4, 6)), "BBB-000001-2", 7, label=None),
    ]


def test_windows_survive_a_file_round_trip(tmp_path):
    path = tmp_path / "windows.csv"
    assert write_windows_csv(_windows(), path) == 2
    loaded = read_windows_csv(path)
    for original, restored in zip(_windows(), loaded):
        np.testing.assert_array_equal(restored.values, original.values)
        assert restored.flight_id == original.flight_id
        assert restored.start == original.start
        assert restored.label == original.label


def test_header_lists_features_row_major(tmp_path):
    path = tmp_path / "windows.csv"
    write_windows_csv(_windows(), path)
    header = path.read_text(encoding="utf-8").splitlines()[0].split(",")
    assert header[:6] == ["window_id", "flight_id", "start", "label", "latitude_0", "longitude_0"]
    assert header[-1] == "altitude_3"


def test_mixed_lengths_are_rejected(tmp_path):
    windows = _windows()
    windows.append(FeatureWindow(np.zeros((3, 6)), "CCC", 0, label=0))
    with pytest.raises(SchemaError):
        write_windows_csv(windows, tmp_path / "windows.csv")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_windows_csv(tmp_path / "absent.csv")


def test_missing_identity_column(tmp_path):
    path = tmp_path / "windows.csv"
    path.write_text("window_id,flight_id,start\n0,AAA,0\n", encoding="utf-8")
    with pytest.raises(SchemaError) as exc_info:
        read_windows_csv(path)
    assert exc_info.value.column == "label"


def test_partial_feature_rows_are_rejected(tmp_path):
    path = tmp_path / "windows.csv"
    path.write_text(
        "window_id,flight_id,start,label,latitude_0,longitude_0\n0,AAA,0,1,50.0,8.0\n",
        encoding="utf-8",
    )
    with pytest.raises(SchemaError):
        read_windows_csv(path)


def test_label_counts():
    windows = _windows() + [FeatureWindow(np.zeros((4, 6)), "CCC", 0, label=1)]
    assert label_counts(windows) == {"1": 2, "None": 1}


def test_manifest_is_sorted_json(tmp_path):
    path = tmp_path / "nested" / "dataset.json"
    write_dataset_manifest(path, {"seed": 3, "attack": "alt"})
    text = path.read_text(encoding="utf-8")
    assert json.loads(text) == {"attack": "alt", "seed": 3}
    assert text.index('"attack"') < text.index('"seed"')
