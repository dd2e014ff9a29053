"""xLSTM and transformer sequence models with forecasting and detection heads."""

from adsb_sentinel.models.cells import (
    MLstmCell,
    MLstmCellState,
    SLstmCell,
    SLstmCellState,
    run_cell,
)
from adsb_sentinel.models.config import ModelConfig, canonical_architecture
from adsb_sentinel.models.heads import HEAD_TYPES, ModelWithHead
from adsb_sentinel.models.layers import LayerNorm, Linear, Module
from adsb_sentinel.models.registry import (
    ArchitectureRegistry,
    available_architectures,
    get_architecture,
    get_architecture_registry,
    register_architecture,
)
from adsb_sentinel.models.transformer import SelfAttention, TransformerEncoder, causal_mask
from adsb_sentinel.models.xlstm import XLstmBlock, XLstmStack

__all__ = [
    "Module",
    "Linear",
    "LayerNorm",
    "SLstmCell",
    "SLstmCellState",
    "MLstmCell",
    "MLstmCellState",
    "run_cell",
    "XLstmBlock",
    "XLstmStack",
    "SelfAttention",
    "TransformerEncoder",
    "causal_mask",
    "ModelConfig",
    "canonical_architecture",
    "ModelWithHead",
    "HEAD_TYPES",
    "ArchitectureRegistry",
    "get_architecture_registry",
    "register_architecture",
    "get_architecture",
    "available_architectures",
]
