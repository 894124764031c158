"""Trained model bundle and its JSON checkpoint representation."""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from domain.exceptions import CheckpointError, ConfigError, VersioningError
from domain.model.network import EnsembleNetwork
from domain.value_objects import ModelConfig

CHECKPOINT_FORMAT = 1
_REQUIRED_KEYS = ("format", "config", "config_hash", "seed", "input_length", "n_metrics", "tensors")


@dataclass(slots=True)
class EnsembleModel:
    """A network plus the preprocessing states fitted with it.

    Attributes:
        network: Trained parameters
        preprocessing: JSON-ready fitted states (metric pipeline, vocabulary,
            padded length) needed to encode new inputs the same way
    """

    network: EnsembleNetwork
    preprocessing: dict[str, Any] = field(default_factory=dict)

    @property
    def config(self) -> ModelConfig:
        return self.network.config


def to_checkpoint(model: EnsembleModel) -> dict[str, Any]:
    """Named tensors ``{name, shape, values}`` plus config, hash and seed."""
    network = model.network
    config = network.config
    return {
        "format": CHECKPOINT_FORMAT,
        "config": config.to_dict(),
        "config_hash": config.fingerprint(),
        "seed": config.seed,
        "input_length": network.input_length,
        "n_metrics": network.n_metrics,
        "preprocessing": model.preprocessing,
        "tensors": [
            {
                "name": name,
                "shape": list(parameter.shape),
                "values": parameter.value.ravel().tolist(),
            }
            for name, parameter in network.named_parameters()
        ],
    }


def from_checkpoint(
    payload: dict[str, Any], expected_fingerprint: str | None = None
) -> EnsembleModel:
    """Rebuild a model from ``to_checkpoint`` output.

    Raises:
        VersioningError: on a malformed document, unknown format, or a config
            hash that does not match the stored (or expected) configuration
        CheckpointError: if a tensor is missing, unexpected, or misshapen
    """
    missing_keys = [key for key in _REQUIRED_KEYS if key not in payload]
    if missing_keys:
        raise VersioningError(f"Checkpoint lacks {', '.join(missing_keys)}")
    if payload["format"] != CHECKPOINT_FORMAT:
        raise VersioningError(f"Unsupported checkpoint format {payload['format']}")
    try:
        config = ModelConfig.from_dict(payload["config"])
    except (ConfigError, KeyError, TypeError, ValueError) as e:
        raise VersioningError(f"Checkpoint config is unreadable: {e}") from e
    fingerprint = config.fingerprint()
    if payload["config_hash"] != fingerprint:
        raise VersioningError("Checkpoint config hash does not match its configuration")
    if expected_fingerprint is not None and expected_fingerprint != fingerprint:
        raise VersioningError("Checkpoint was trained with a different configuration")

    network = EnsembleNetwork(
        config, payload["input_length"], payload["n_metrics"], np.random.default_rng(0)
    )
    tensors = {item["name"]: item for item in payload["tensors"]}
    expected = dict(network.named_parameters())
    unexpected = sorted(set(tensors) - set(expected))
    if unexpected:
        raise CheckpointError(f"Checkpoint holds unexpected tensor {unexpected[0]}")
    for name, parameter in expected.items():
        if name not in tensors:
            raise CheckpointError(f"Checkpoint is missing tensor {name}")
        item = tensors[name]
        values = np.asarray(item["values"], dtype=np.float64)
        if tuple(item["shape"]) != parameter.shape or values.size != parameter.value.size:
            raise CheckpointError(
                f"Tensor {name} has shape {item['shape']}, expected {list(parameter.shape)}"
            )
        parameter.value[...] = values.reshape(parameter.shape)
    return EnsembleModel(network=network, preprocessing=payload.get("preprocessing", {}))
