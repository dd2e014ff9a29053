"""
Architecture configuration shared by model construction and checkpoints.
"""

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional

from adsb_sentinel.errors import ConfigurationError

ARCHITECTURE_ALIASES = {"tx": "transformer"}

# Dropout applies to the transformer only.
DEFAULT_DROPOUT = {"xlstm": 0.0, "transformer": 0.005}


def canonical_architecture(name: str) -> str:
    return ARCHITECTURE_ALIASES.get(name, name)


@dataclass
class ModelConfig:
    """Shape of a sequence model; everything needed to rebuild it from scratch."""

    architecture: str
    input_dim: int = 6
    embedding_dim: int = 64
    heads: int = 1
    num_blocks: int = 4
    slstm_positions: tuple[int, ...] = field(default_factory=lambda: (1,))
    num_layers: int = 4
    ffn_dim: int = 256
    dropout: float = 0.0
    seed: int = 0

    def __post_init__(self):
        self.architecture = canonical_architecture(self.architecture)
        self.slstm_positions = tuple(int(p) for p in self.slstm_positions)
        if self.input_dim < 1 or self.embedding_dim < 2:
            raise ConfigurationError(
                f"input_dim must be >= 1 and embedding_dim >= 2, got "
                f"{self.input_dim} and {self.embedding_dim}"
            )
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigurationError(f"dropout must lie in [0, 1), got {self.dropout}")

    @classmethod
    def defaults(cls, architecture: str, seed: int = 0, **overrides: Any) -> "ModelConfig":
        """Reference architecture for ``architecture`` with optional overrides."""
        name = canonical_architecture(architecture)
        base = {"architecture": name, "dropout": DEFAULT_DROPOUT.get(name, 0.0), "seed": seed}
        base.update(overrides)
        return cls(**base)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["slstm_positions"] = list(self.slstm_positions)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any], seed: Optional[int] = None) -> "ModelConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown model config key: {unknown[0]}")
        if "architecture" not in data:
            raise ConfigurationError("model config is missing key: architecture")
        values = dict(data)
        if seed is not None:
            values["seed"] = seed
        try:
            return cls(**values)
        except TypeError as e:
            raise ConfigurationError(f"invalid model config: {e}") from e
