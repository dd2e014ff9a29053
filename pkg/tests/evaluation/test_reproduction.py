"""
Desk-scale end-to-end runs: pre-train, fine-tune the four classifiers with
their reference hyperparameters, then evaluate the ensembles.

Model widths are reduced so both architectures train in minutes on a laptop
CPU; the rest of the pipeline runs at its reference settings.
"""

import pytest

from adsb_sentinel.attacks import (
    CLASSES,
    build_dataset_b,
    build_dataset_c,
    build_unseen_set,
    split_flights,
)
from adsb_sentinel.data import synthesize_flights
from adsb_sentinel.evaluation import EnsembleIDS, evaluate
from adsb_sentinel.training import TrainConfig, finetune, prepare_pretrain_windows, pretrain

pytestmark = pytest.mark.slow

SEED = 0
PRETRAIN_LENGTH = 10
LENGTH = 50
STRIDE = 10
DESK_MODEL = {
    "embedding_dim": 16,
    "num_blocks": 2,
    "slstm_positions": (1,),
    "num_layers": 2,
    "ffn_dim": 32,
}


@pytest.fixture(scope="module")
def desk_flights():
    return synthesize_flights(400, seed=2024)


@pytest.fixture(scope="module")
def subsets(desk_flights):
    return build_dataset_b(desk_flights, LENGTH, seed=SEED, stride=STRIDE).subsets


@pytest.fixture(scope="module")
def ensembles(desk_flights, subsets):
    train_flights = split_flights(desk_flights, SEED)["train"]
    stats, windows = prepare_pretrain_windows(train_flights, PRETRAIN_LENGTH, stride=5)
    result = {}
    for architecture in ("xlstm", "transformer"):
        config = TrainConfig.defaults("pretrain", architecture, seed=SEED)
        config.model = dict(DESK_MODEL)
        pretrained = pretrain(config, windows, stats)
        checkpoints = {
            name: finetune(
                TrainConfig.defaults("finetune", architecture, name, seed=SEED),
                pretrained,
                subsets[name].train,
            )
            for name in CLASSES
        }
        result[architecture] = EnsembleIDS.from_checkpoints(checkpoints)
    return result


@pytest.fixture(scope="module")
def multiclass_reports(desk_flights, ensembles):
    test = build_dataset_c(desk_flights, LENGTH, seed=SEED, stride=STRIDE).test
    return {name: evaluate(ids, test) for name, ids in ensembles.items()}


def test_xlstm_ensemble_separates_the_four_classes(multiclass_reports):
    metrics = multiclass_reports["xlstm"].metrics
    assert metrics.f1 >= 0.95
    assert metrics.far <= 0.05


def test_xlstm_ensemble_is_at_least_as_good_as_the_transformer(multiclass_reports):
    assert multiclass_reports["xlstm"].metrics.f1 >= multiclass_reports["transformer"].metrics.f1


def test_standing_still_is_flagged_without_training_on_it(desk_flights, ensembles):
    unseen = build_unseen_set(desk_flights, LENGTH, seed=SEED, stride=STRIDE)
    metrics = evaluate(ensembles["xlstm"], unseen.windows, unseen=True).metrics
    assert metrics.recall >= 0.80
    assert metrics.far <= 0.08
