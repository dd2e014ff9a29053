"""Tests for architecture configuration and the architecture registry."""

import pytest

from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models import (
    ModelConfig,
    ModelWithHead,
    available_architectures,
    canonical_architecture,
    get_architecture,
    register_architecture,
)
from adsb_sentinel.models.registry import ArchitectureRegistry, get_architecture_registry
from adsb_sentinel.models.xlstm import XLstmStack


def test_defaults_follow_the_reference_architecture():
    config = ModelConfig.defaults("xlstm")
    assert config.embedding_dim == 64
    assert config.heads == 1
    assert config.num_blocks == 4
    assert config.slstm_positions == (1,)
    assert config.dropout == 0.0


def test_transformer_defaults():
    config = ModelConfig.defaults("tx", seed=3)
    assert config.architecture == "transformer"
    assert config.num_layers == 4
    assert config.ffn_dim == 256
    assert config.dropout == 0.005
    assert config.seed == 3


def test_dict_round_trip_preserves_the_config():
    config = ModelConfig.defaults("xlstm", embedding_dim=16, slstm_positions=(0, 2))
    data = config.to_dict()
    assert data["slstm_positions"] == [0, 2]
    assert ModelConfig.from_dict(data) == config


def test_from_dict_can_override_the_seed():
    data = ModelConfig.defaults("xlstm", seed=1).to_dict()
    assert ModelConfig.from_dict(data, seed=9).seed == 9


@pytest.mark.parametrize(
    "data",
    [
        {"architecture": "xlstm", "layers": 3},
        {"embedding_dim": 8},
        {"architecture": "xlstm", "dropout": 1.5},
        {"architecture": "xlstm", "embedding_dim": 1},
    ],
)
def test_invalid_configs_are_rejected(data):
    with pytest.raises(ConfigurationError):
        ModelConfig.from_dict(data)


def test_canonical_architecture():
    assert canonical_architecture("tx") == "transformer"
    assert canonical_architecture("xlstm") == "xlstm"


def test_builtin_architectures_are_registered():
    assert {"xlstm", "transformer"} <= set(available_architectures())
    assert callable(get_architecture("tx"))


def test_unknown_architecture_names_the_alternatives():
    with pytest.raises(ConfigurationError) as exc_info:
        get_architecture("gru")
    assert "xlstm" in str(exc_info.value)


def test_registry_get_and_register():
    registry = ArchitectureRegistry()
    assert registry.get_registered_names() == []
    registry.register("custom", lambda config, rng, dropout_rng: None)
    assert registry.get_registered_names() == ["custom"]


def test_custom_architecture_builds_through_the_model(make_config):
    """A registered core is picked up by ModelWithHead."""

    def build(config, rng, _dropout_rng):
        return XLstmStack(1, (), config.embedding_dim, 1, rng)

    register_architecture("single_mlstm", build)
    try:
        model = ModelWithHead(make_config("single_mlstm"))
        assert model.core.block_kinds() == ["mlstm"]
    finally:
        get_architecture_registry()._builders.pop("single_mlstm")
