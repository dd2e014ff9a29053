"""
Registry of sequence-model cores.

Architectures register a builder that turns a ``ModelConfig`` into a core
module mapping (B, L, embedding_dim) to (B, L, embedding_dim).
"""

from typing import Callable

import numpy as np

from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models.config import ModelConfig, canonical_architecture
from adsb_sentinel.models.layers import Module
from adsb_sentinel.models.transformer import TransformerEncoder
from adsb_sentinel.models.xlstm import XLstmStack

CoreBuilder = Callable[[ModelConfig, np.random.Generator, np.random.Generator], Module]


class ArchitectureRegistry:
    """Registry for model core builders."""

    def __init__(self):
        self._builders: dict[str, CoreBuilder] = {}

    def register(self, name: str, builder: CoreBuilder) -> None:
        """Register a core builder.

        Args:
            name: The architecture name.
            builder: Callable taking (config, init_rng, dropout_rng).
        """
        self._builders[name] = builder

    def get(self, name: str) -> CoreBuilder:
        """Get a builder by name or alias.

        Raises:
            ConfigurationError: If no architecture is registered under the name.
        """
        try:
            return self._builders[canonical_architecture(name)]
        except KeyError as e:
            raise ConfigurationError(
                f"unknown architecture {name!r}; available: {self.get_registered_names()}"
            ) from e

    def build(
        self,
        config: ModelConfig,
        rng: np.random.Generator,
        dropout_rng: np.random.Generator,
    ) -> Module:
        return self.get(config.architecture)(config, rng, dropout_rng)

    def get_registered_names(self) -> list[str]:
        return list(self._builders.keys())


def _build_xlstm(config: ModelConfig, rng: np.random.Generator, _dropout_rng) -> Module:
    return XLstmStack(
        num_blocks=config.num_blocks,
        slstm_positions=config.slstm_positions,
        embedding_dim=config.embedding_dim,
        heads=config.heads,
        rng=rng,
    )


def _build_transformer(
    config: ModelConfig, rng: np.random.Generator, dropout_rng: np.random.Generator
) -> Module:
    return TransformerEncoder(
        num_layers=config.num_layers,
        heads=config.heads,
        embedding_dim=config.embedding_dim,
        ffn_dim=config.ffn_dim,
        dropout=config.dropout,
        rng=rng,
        dropout_rng=dropout_rng,
    )


# Global registry instance
_registry = None


def get_architecture_registry() -> ArchitectureRegistry:
    """Get the global architecture registry with the built-ins registered."""
    global _registry
    if _registry is None:
        _registry = ArchitectureRegistry()
        _registry.register("xlstm", _build_xlstm)
        _registry.register("transformer", _build_transformer)
    return _registry


def register_architecture(name: str, builder: CoreBuilder) -> None:
    get_architecture_registry().register(name, builder)


def get_architecture(name: str) -> CoreBuilder:
    return get_architecture_registry().get(name)


def available_architectures() -> list[str]:
    return get_architecture_registry().get_registered_names()
