"""Network and training hyperparameters."""

import hashlib
import json
from dataclasses import asdict, dataclass
from typing import Any

from domain.enums import Ablation
from domain.exceptions import ConfigError

KERNEL_GRID: tuple[int, ...] = (3, 4, 5, 6, 7)
BETA_GRID: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0, 12.0, 32.0, 84.0)


@dataclass(frozen=True, slots=True)
class ModelConfig:
    """Immutable hyperparameters of the fused network and its training loop.

    Attributes:
        kernel_size: Convolution window, one of 3..7 unless ``allow_custom_kernel``
        filters: Filters of the two convolution blocks
        lstm_hidden: Hidden units per LSTM direction
        bidirectional: Run the recurrent layer in both directions
        structural_latent: Width of the single adaptive layer over metrics
        classifier_hidden: Widths of the two hidden classifier layers
        beta: Weight of the positive-class term in the loss
        learning_rate: Plain SGD step size
        batch_size: Mini-batch size
        epochs: Full passes over the training data
        seed: Seed for initialization and shuffling
        decision_threshold: Probability at or above which a sample is smelly
        ablation: Which branches feed the classifier
        allow_custom_kernel: Permit kernel sizes outside the grid
    """

    kernel_size: int = 5
    filters: tuple[int, int] = (16, 32)
    lstm_hidden: int = 32
    bidirectional: bool = True
    structural_latent: int = 16
    classifier_hidden: tuple[int, int] = (64, 32)
    beta: float = 1.0
    learning_rate: float = 0.025
    batch_size: int = 128
    epochs: int = 85
    seed: int = 42
    decision_threshold: float = 0.5
    ablation: Ablation = Ablation.FULL
    allow_custom_kernel: bool = False

    def __post_init__(self) -> None:
        """Validate widths, grid membership and optimizer settings."""
        if self.kernel_size < 1:
            raise ConfigError(f"kernel_size must be positive, got {self.kernel_size}")
        if self.kernel_size not in KERNEL_GRID and not self.allow_custom_kernel:
            raise ConfigError(
                f"kernel_size {self.kernel_size} outside grid {KERNEL_GRID}; "
                "set allow_custom_kernel to override"
            )
        widths = {
            "filters": self.filters,
            "classifier_hidden": self.classifier_hidden,
            "lstm_hidden": (self.lstm_hidden,),
        }
        if self.ablation.uses_structural:
            widths["structural_latent"] = (self.structural_latent,)
        for name, values in widths.items():
            if any(v < 1 for v in values):
                raise ConfigError(f"{name} must be positive, got {values}")
        if self.beta <= 0:
            raise ConfigError(f"beta must be positive, got {self.beta}")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.batch_size < 1 or self.epochs < 1:
            raise ConfigError("batch_size and epochs must be at least 1")

    @property
    def semantic_width(self) -> int:
        """Width of the recurrent branch output (0 when the branch is disabled)."""
        if not self.ablation.uses_semantic:
            return 0
        return self.lstm_hidden * (2 if self.bidirectional else 1)

    @property
    def structural_width(self) -> int:
        return self.structural_latent if self.ablation.uses_structural else 0

    @property
    def classifier_input_width(self) -> int:
        return self.semantic_width + self.structural_width

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        payload = asdict(self)
        payload["filters"] = list(self.filters)
        payload["classifier_hidden"] = list(self.classifier_hidden)
        payload["ablation"] = self.ablation.value
        return payload

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ModelConfig":
        data = dict(payload)
        data["filters"] = tuple(data["filters"])
        data["classifier_hidden"] = tuple(data["classifier_hidden"])
        data["ablation"] = Ablation(data["ablation"])
        return cls(**data)

    def fingerprint(self) -> str:
        """Stable SHA-256 hex digest of the configuration."""
        encoded = json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(encoded).hexdigest()
