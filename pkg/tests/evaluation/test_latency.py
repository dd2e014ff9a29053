import pytest

from adsb_sentinel.attacks.spec import CLASSES
from adsb_sentinel.evaluation import (
    SSR_REFRESH_MAX,
    SSR_REFRESH_MIN,
    EnsembleIDS,
    EvaluationError,
    LatencyStats,
    bench_latency,
)
from adsb_sentinel.models import ModelWithHead

from ..conftest import tiny_config
from .factories import IDENTITY, LENGTH, labelled_windows, recogniser


def test_order_statistics():
    stats = LatencyStats.from_samples([1.0, 2.0, 3.0, 4.0, 5.0])
    assert stats.mean == 3.0
    assert stats.p50 == 3.0
    assert stats.p95 == pytest.approx(4.8)
    assert stats.max == 5.0
    assert stats.count == 5


@pytest.mark.parametrize(
    "samples, within, under",
    [
        ([0.01, 0.02], False, True),
        ([SSR_REFRESH_MIN, SSR_REFRESH_MAX], True, False),
        ([20.0], False, False),
    ],
)
def test_radar_refresh_comparison(samples, within, under):
    stats = LatencyStats.from_samples(samples)
    assert stats.within_ssr_window is within
    assert stats.under_ssr_minimum is under
    assert stats.to_dict()["ssr_window_seconds"] == [5.0, 12.0]


def test_no_samples():
    with pytest.raises(EvaluationError):
        LatencyStats.from_samples([])


@pytest.fixture
def ids():
    return EnsembleIDS({name: recogniser(i) for i, name in enumerate(CLASSES)}, IDENTITY, LENGTH)


def test_bench_times_every_window_every_pass(ids):
    result = bench_latency(ids, labelled_windows([3, 1, 0]), repetitions=4, warmup=2)
    assert result.stats.count == 12
    assert result.predictions == [3, 1, 0]
    assert result.repetitions == 4
    assert result.architecture == "xlstm"
    # two warm-up calls plus one per window per pass, per member
    assert ids.models["ALT"].calls == 2 + 12
    assert result.to_dict()["latency"]["count"] == 12


def test_bench_needs_a_repetition(ids):
    with pytest.raises(EvaluationError):
        bench_latency(ids, labelled_windows([0]), repetitions=0)


class DoubledEnsemble:
    """Eight detectors: every window goes through two four-model ensembles."""

    def __init__(self, first, second):
        self.first, self.second = first, second
        self.architecture = first.architecture

    def normalize(self, values):
        return self.first.normalize(values)

    def classify_batch(self, values):
        self.second.classify_batch(values)
        return self.first.classify_batch(values)


def _real_ensemble(offset):
    models = {
        name: ModelWithHead(tiny_config("xlstm", seed=offset + i), head="detect")
        for i, name in enumerate(CLASSES)
    }
    return EnsembleIDS(models, IDENTITY, LENGTH)


@pytest.mark.slow
def test_eight_models_take_about_twice_as_long_as_four():
    windows = labelled_windows([0, 1, 2, 3] * 10)
    four = _real_ensemble(0)
    eight = DoubledEnsemble(_real_ensemble(0), _real_ensemble(10))
    single = bench_latency(four, windows, repetitions=5, warmup=5).stats.mean
    doubled = bench_latency(eight, windows, repetitions=5, warmup=5).stats.mean
    assert 1.4 <= doubled / single <= 2.6
