"""Tests for models with forecasting and detection heads."""

import numpy as np
import pytest

from adsb_sentinel.errors import ConfigurationError, UsageError
from adsb_sentinel.models import ModelWithHead
from adsb_sentinel.numerics import ShapeMismatchError, Tensor, gradient_check, ops


def _window(length=10, seed=0):
    return np.random.default_rng(seed).normal(size=(length, 6))


@pytest.mark.parametrize("length", [1, 5, 10])
def test_forecast_has_six_features(tiny_model_config, length):
    model = ModelWithHead(tiny_model_config, head="forecast").eval()
    assert model.forecast(_window(length)).shape == (6,)


def test_zero_forecast_head_predicts_zero(tiny_model_config):
    model = ModelWithHead(tiny_model_config, head="forecast").eval()
    model.head.zero_()
    np.testing.assert_array_equal(model.forecast(_window()), np.zeros(6))


def test_zero_detection_head_gives_one_half(tiny_model_config):
    model = ModelWithHead(tiny_model_config, head="detect").eval()
    model.head.zero_()
    assert model.detect(_window()) == 0.5


def test_detection_is_a_deterministic_probability(tiny_model_config):
    model = ModelWithHead(tiny_model_config, head="detect").eval()
    first = model.detect(_window(seed=3))
    assert 0.0 < first < 1.0
    assert model.detect(_window(seed=3)) == first


def test_batches_match_single_windows(tiny_model_config):
    model = ModelWithHead(tiny_model_config, head="detect").eval()
    windows = np.stack([_window(seed=s) for s in range(3)])
    batch = model.detect_batch(windows)
    assert batch.shape == (3,)
    for idx in range(3):
        assert batch[idx] == pytest.approx(model.detect(windows[idx]), abs=1e-12)


def test_forecast_sequence_matches_prefix_forecasts(tiny_model_config):
    """Row t of the sequence forecast equals forecasting the prefix ending at t."""
    model = ModelWithHead(tiny_model_config, head="forecast").eval()
    window = _window(length=6)
    sequence = model.forecast_sequence(window)
    assert sequence.shape == (6, 6)
    for t in range(6):
        np.testing.assert_allclose(sequence[t], model.forecast(window[: t + 1]), atol=1e-12)


def test_wrong_head_is_a_usage_error(tiny_model_config):
    forecaster = ModelWithHead(tiny_model_config, head="forecast")
    detector = ModelWithHead(tiny_model_config, head="detect")
    with pytest.raises(UsageError):
        forecaster.detect(_window())
    with pytest.raises(UsageError):
        detector.forecast(_window())


def test_unknown_head_is_rejected(tiny_model_config):
    with pytest.raises(ConfigurationError):
        ModelWithHead(tiny_model_config, head="classify")


def test_wrong_feature_count_is_rejected(tiny_model_config):
    model = ModelWithHead(tiny_model_config)
    with pytest.raises(ShapeMismatchError):
        model.forecast(np.zeros((10, 5)))


def test_same_config_builds_identical_models(tiny_model_config):
    first = ModelWithHead(tiny_model_config)
    second = ModelWithHead(tiny_model_config)
    assert first.parameter_count() == second.parameter_count()
    for (name, a), (other, b) in zip(first.parameters().items(), second.parameters().items()):
        assert name == other
        np.testing.assert_array_equal(a.data, b.data)


def test_replace_head_keeps_the_core(tiny_model_config):
    model = ModelWithHead(tiny_model_config, head="forecast")
    core = {name: values.copy() for name, values in model.state_dict().items()}
    model.replace_head("detect")
    assert model.head_type == "detect"
    assert model.head.weight.shape == (tiny_model_config.embedding_dim, 1)
    for name, values in model.state_dict().items():
        if not name.startswith("head."):
            np.testing.assert_array_equal(values, core[name])


def test_load_state_copies_matching_parameters(make_config):
    source = ModelWithHead(make_config("xlstm", seed=1), head="forecast")
    target = ModelWithHead(make_config("xlstm", seed=2), head="detect")
    loaded = target.load_state(source.state_dict(), skip_prefix="head.")
    assert loaded and not any(name.startswith("head.") for name in loaded)
    np.testing.assert_array_equal(
        target.input_projection.weight.data, source.input_projection.weight.data
    )


def test_load_state_rejects_wrong_shapes(make_config):
    model = ModelWithHead(make_config("transformer"))
    with pytest.raises(ShapeMismatchError):
        model.load_state({"input_projection.weight": np.zeros((2, 2))})


@pytest.mark.slow
def test_every_parameter_gradient_matches_finite_differences(tiny_model_config):
    """Two blocks or layers, width 8, length 5: autodiff agrees with central differences."""
    model = ModelWithHead(tiny_model_config, head="forecast")
    rng = np.random.default_rng(11)
    window = Tensor(rng.normal(size=(1, 5, 6)))
    weight = Tensor(rng.normal(size=(1, 6)))
    params = list(model.parameters().values())

    def loss():
        return ops.sum(ops.mul(model(window), weight))

    assert gradient_check(loss, params) <= 1e-4
