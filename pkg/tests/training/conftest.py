"""Fixtures for training tests: tiny models trained for an epoch or two."""

import pytest

from adsb_sentinel.attacks import build_dataset_b
from adsb_sentinel.training import TrainConfig, prepare_pretrain_windows, pretrain

from ..conftest import TINY_MODEL

LENGTH = 10


def tiny_train_config(stage, architecture, classifier=None, **overrides):
    values = {
        "stage": stage,
        "architecture": architecture,
        "classifier": classifier,
        "epochs": 2,
        "batch_size": 16,
        "sequence_length": LENGTH,
        "learning_rate": 5e-3,
        "dropout": 0.0,
        "seed": 0,
        "model": dict(TINY_MODEL),
    }
    values.update(overrides)
    return TrainConfig(**values)


@pytest.fixture(scope="session")
def pretrain_data(flights):
    """Normalisation stats and forecasting windows from six flights."""
    return prepare_pretrain_windows(flights[:6], LENGTH, stride=5)


@pytest.fixture(scope="session")
def altitude_subset(flights):
    return build_dataset_b(flights, LENGTH, seed=1, stride=5).subsets["altitude"]


@pytest.fixture(scope="session")
def pretrained(pretrain_data):
    """One pre-trained checkpoint per architecture."""
    stats, windows = pretrain_data
    return {
        arch: pretrain(tiny_train_config("pretrain", arch, epochs=1), windows, stats)
        for arch in ("xlstm", "transformer")
    }
