"""
Labelled window CSV files and dataset manifests.

Window CSV layout: ``window_id,flight_id,start,label`` followed by the L x 6
values row-major, with columns named ``<feature>_<t>``.
"""

import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Union

import numpy as np
import pandas as pd

from adsb_sentinel.data.errors import SchemaError
from adsb_sentinel.data.records import FEATURES
from adsb_sentinel.data.windows import FeatureWindow

ID_COLUMNS = ("window_id", "flight_id", "start", "label")


def value_columns(length: int) -> list[str]:
    return [f"{feature}_{t}" for t in range(length) for feature in FEATURES]


def write_windows_csv(windows: Sequence[FeatureWindow], path: Union[str, Path]) -> int:
    """Write labelled windows; all windows must share one length."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    length = windows[0].length if windows else 0
    columns = list(ID_COLUMNS) + value_columns(length)
    rows = []
    for i, w in enumerate(windows):
        if w.length != length:
            raise SchemaError(f"window {i} has length {w.length}, expected {length}")
        label = -1 if w.label is None else int(w.label)
        rows.append([i, w.flight_id, w.start, label] + w.values.reshape(-1).tolist())
    pd.DataFrame(rows, columns=columns).to_csv(path, index=False, lineterminator="\n")
    return len(rows)


def read_windows_csv(path: Union[str, Path]) -> list[FeatureWindow]:
    """Read windows written by :func:`write_windows_csv`.

    Raises:
        FileNotFoundError: If the file does not exist
        SchemaError: If the identity columns are missing or the value columns
            do not form whole rows of six features
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    try:
        frame = pd.read_csv(path, dtype={"flight_id": str}, float_precision="round_trip")
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"{path}: file has no header row") from e
    for column in ID_COLUMNS:
        if column not in frame.columns:
            raise SchemaError(f"{path}: missing required column {column!r}", column=column)
    n_values = len(frame.columns) - len(ID_COLUMNS)
    if n_values % len(FEATURES):
        raise SchemaError(f"{path}: {n_values} value columns do not form rows of {len(FEATURES)}")
    length = n_values // len(FEATURES)
    expected = value_columns(length)
    if list(frame.columns[len(ID_COLUMNS) :]) != expected:
        raise SchemaError(f"{path}: value columns must be named {expected[:2]}...")

    values = frame[expected].to_numpy(np.float64).reshape(len(frame), length, len(FEATURES))
    if not np.all(np.isfinite(values)):
        raise SchemaError(f"{path}: window values must be finite")
    return [
        FeatureWindow(
            values=values[i],
            flight_id=str(frame["flight_id"].iat[i]),
            start=int(frame["start"].iat[i]),
            label=None if int(frame["label"].iat[i]) < 0 else int(frame["label"].iat[i]),
        )
        for i in range(len(frame))
    ]


def write_dataset_manifest(path: Union[str, Path], info: dict[str, Any]) -> None:
    """Write dataset bookkeeping as sorted, indented JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(info, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def label_counts(windows: Sequence[FeatureWindow]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for w in windows:
        key = str(w.label)
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))
