"""
Checkpoint persistence.

A checkpoint is one JSON document::

    {"version", "architecture", "config", "normalization", "provenance",
     "params": [{"name", "shape", "values"}]}

``values`` holds base64-encoded little-endian 64-bit floats, so a save/load
round trip is bit-exact. Keys are sorted and no timestamps are stored, so
identical training runs produce byte-identical files.
"""

import base64
import binascii
import json
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

import numpy as np

from adsb_sentinel.data.errors import DataError
from adsb_sentinel.data.normalize import NormalizationStats
from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models.config import ModelConfig
from adsb_sentinel.models.heads import HEAD_TYPES, ModelWithHead
from adsb_sentinel.telemetry import LoggingFacade
from adsb_sentinel.training.errors import (
    CheckpointFormatError,
    CheckpointVersionError,
    MissingNormalizationError,
    MissingParameterError,
    ParameterShapeError,
)

logger = LoggingFacade("adsb_sentinel.training.checkpoint")

CHECKPOINT_VERSION = 1
_DTYPE = np.dtype("<f8")


def encode_array(values: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(values, dtype=_DTYPE).tobytes()).decode("ascii")


def decode_array(text: str, shape: tuple[int, ...], name: str) -> np.ndarray:
    try:
        raw = base64.b64decode(text.encode("ascii"), validate=True)
    except (binascii.Error, ValueError, AttributeError) as e:
        raise CheckpointFormatError(f"parameter {name}: invalid base64 payload") from e
    if len(raw) % _DTYPE.itemsize:
        raise CheckpointFormatError(f"parameter {name}: payload is not whole 64-bit floats")
    values = np.frombuffer(raw, dtype=_DTYPE).astype(np.float64)
    if values.size != int(np.prod(shape, dtype=np.int64)):
        raise ParameterShapeError(
            f"parameter {name}: {values.size} values do not fill shape {tuple(shape)}"
        )
    return values.reshape(shape)


@dataclass
class Checkpoint:
    """Model weights plus everything needed to rebuild and use them."""

    model_config: ModelConfig
    head: str
    params: "OrderedDict[str, np.ndarray]"
    normalization: NormalizationStats
    provenance: dict[str, Any] = field(default_factory=dict)
    training: dict[str, Any] = field(default_factory=dict)

    @property
    def architecture(self) -> str:
        return self.model_config.architecture

    @classmethod
    def from_model(
        cls,
        model: ModelWithHead,
        normalization: NormalizationStats,
        provenance: dict[str, Any],
        training: dict[str, Any],
    ) -> "Checkpoint":
        return cls(
            model_config=model.config,
            head=model.head_type,
            params=model.state_dict(),
            normalization=normalization,
            provenance=provenance,
            training=training,
        )

    def serialize(self) -> bytes:
        """Encode as a sorted-key JSON document.

        Raises:
            CheckpointFormatError: If provenance holds values JSON cannot encode
        """
        document = {
            "version": CHECKPOINT_VERSION,
            "architecture": self.architecture,
            "config": {
                "model": self.model_config.to_dict(),
                "head": self.head,
                "training": self.training,
            },
            "normalization": self.normalization.to_dict(),
            "provenance": self.provenance,
            "params": [
                {"name": name, "shape": list(values.shape), "values": encode_array(values)}
                for name, values in self.params.items()
            ],
        }
        try:
            return (json.dumps(document, sort_keys=True, indent=1) + "\n").encode("utf-8")
        except (TypeError, ValueError) as e:
            raise CheckpointFormatError(f"failed to serialize checkpoint: {e}") from e

    @classmethod
    def deserialize(cls, data: bytes) -> "Checkpoint":
        """Decode and validate a checkpoint document.

        Validation covers the version, the presence of normalisation statistics,
        and parameter names and shapes against the declared architecture.
        """
        try:
            document = json.loads(data.decode("utf-8"))
        except UnicodeDecodeError as e:
            raise CheckpointFormatError(f"invalid UTF-8 encoding: {e}") from e
        except json.JSONDecodeError as e:
            raise CheckpointFormatError(f"invalid JSON data: {e}") from e
        if not isinstance(document, dict):
            raise CheckpointFormatError("checkpoint must be a JSON object")

        version = document.get("version")
        if version != CHECKPOINT_VERSION:
            raise CheckpointVersionError(
                f"unsupported checkpoint version {version!r}; expected {CHECKPOINT_VERSION}"
            )
        if not document.get("normalization"):
            raise MissingNormalizationError("checkpoint has no normalization statistics")
        try:
            normalization = NormalizationStats.from_dict(document["normalization"])
        except DataError as e:
            raise MissingNormalizationError(f"unusable normalization statistics: {e}") from e

        try:
            config = document["config"]
            model_config = ModelConfig.from_dict(config["model"])
            head = config["head"]
            entries = document["params"]
            stored = {entry["name"]: entry for entry in entries}
        except (KeyError, TypeError) as e:
            raise CheckpointFormatError(f"checkpoint is missing field {e}") from e
        except ConfigurationError as e:
            raise CheckpointFormatError(f"invalid model config: {e}") from e
        if head not in HEAD_TYPES:
            raise CheckpointFormatError(f"unknown head type {head!r}")
        if document.get("architecture") != model_config.architecture:
            raise CheckpointFormatError(
                f"architecture {document.get('architecture')!r} disagrees with its config"
            )

        expected = ModelWithHead(model_config, head).parameters()
        params: "OrderedDict[str, np.ndarray]" = OrderedDict()
        for name, param in expected.items():
            if name not in stored:
                raise MissingParameterError(f"checkpoint is missing parameter {name}")
            entry = stored[name]
            shape = tuple(entry.get("shape", ()))
            if shape != param.shape:
                raise ParameterShapeError(
                    f"parameter {name}: stored shape {shape}, architecture expects {param.shape}"
                )
            params[name] = decode_array(entry.get("values"), shape, name)
        extra = sorted(set(stored) - set(expected))
        if extra:
            raise CheckpointFormatError(f"checkpoint has unknown parameter {extra[0]}")

        return cls(
            model_config=model_config,
            head=head,
            params=params,
            normalization=normalization,
            provenance=document.get("provenance") or {},
            training=config.get("training") or {},
        )


def save_checkpoint(checkpoint: Checkpoint, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(checkpoint.serialize())
    logger.info("checkpoint.saved", path=str(path), architecture=checkpoint.architecture)


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    """Read and validate a checkpoint file.

    Raises:
        FileNotFoundError: If the file does not exist
        CheckpointError: If the document is malformed or inconsistent
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such checkpoint: {path}")
    checkpoint = Checkpoint.deserialize(path.read_bytes())
    logger.debug("checkpoint.loaded", path=str(path), architecture=checkpoint.architecture)
    return checkpoint


def build_model_from_checkpoint(checkpoint: Checkpoint) -> ModelWithHead:
    """A model with the checkpoint's weights, in evaluation mode."""
    model = ModelWithHead(checkpoint.model_config, checkpoint.head)
    model.load_state(checkpoint.params)
    return model.eval()
