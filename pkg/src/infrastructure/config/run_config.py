"""Experiment configuration: one JSON file plus ``--set key=value`` overrides."""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from domain.enums import Ablation, EncoderKind, MetricLevel, Protocol, Smell
from domain.exceptions import ConfigError, PathError
from domain.value_objects import BETA_GRID, KERNEL_GRID, ModelConfig

_DEFAULTS = ModelConfig()


class ReviewColumns(BaseModel):
    """Column names of the review export."""

    model_config = ConfigDict(extra="forbid")

    sample_id: str = "sample_id"
    smell: str = "smell"
    severity: str = "severity"
    reviewer_id: str = "reviewer_id"
    source_ref: str | None = None


class RunConfig(BaseModel):
    """Everything one train / cv / sweep run needs.

    Model hyperparameters are flat fields mirroring ``ModelConfig``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str | None = None
    smell: Smell
    encoder: EncoderKind = EncoderKind.TOKEN_INDEX
    protocol: Protocol = Protocol.CV5
    ablation: Ablation = Ablation.FULL
    level: MetricLevel | None = None

    # Inputs and outputs
    reviews: Path
    ck_csv: Path | None = None
    embeddings: Path | None = None
    sources_dir: Path | None = None
    output_dir: Path | None = None
    review_columns: ReviewColumns = Field(default_factory=ReviewColumns)

    # Network and training
    kernel_size: int = _DEFAULTS.kernel_size
    filters: tuple[int, int] = _DEFAULTS.filters
    lstm_hidden: int = _DEFAULTS.lstm_hidden
    bidirectional: bool = _DEFAULTS.bidirectional
    structural_latent: int = _DEFAULTS.structural_latent
    classifier_hidden: tuple[int, int] = _DEFAULTS.classifier_hidden
    beta: float = _DEFAULTS.beta
    learning_rate: float = _DEFAULTS.learning_rate
    batch_size: int = _DEFAULTS.batch_size
    epochs: int = _DEFAULTS.epochs
    seed: int = _DEFAULTS.seed
    decision_threshold: float = _DEFAULTS.decision_threshold
    allow_custom_kernel: bool = False

    # Protocols and preprocessing
    test_fraction: float = Field(default=0.2, gt=0, lt=1)
    folds: int = Field(default=5, ge=2)
    knn_neighbors: int = Field(default=5, ge=1)
    sparsity_threshold: float = Field(default=0.05, ge=0, le=1)

    # Sweep grids
    kernel_grid: tuple[int, ...] = KERNEL_GRID
    beta_grid: tuple[float, ...] = BETA_GRID

    @field_validator("smell", mode="before")
    @classmethod
    def _parse_smell(cls, value: Any) -> Any:
        return Smell.parse(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_inputs(self) -> "RunConfig":
        if self.ablation.uses_structural and self.ck_csv is None:
            raise ValueError(f"ablation {self.ablation.value} needs ck_csv")
        if self.ablation.uses_semantic:
            if self.encoder.uses_embeddings and self.embeddings is None:
                raise ValueError(f"encoder {self.encoder.value} needs embeddings")
            if not self.encoder.uses_embeddings and self.sources_dir is None:
                raise ValueError(f"encoder {self.encoder.value} needs sources_dir")
        return self

    @property
    def run_name(self) -> str:
        return self.name or f"{self.smell.alias}_{self.encoder.value}_{self.ablation.value}"

    @property
    def metric_level(self) -> MetricLevel:
        if self.level is not None:
            return self.level
        return MetricLevel.METHOD if self.smell.is_method_level else MetricLevel.CLASS

    def resolve_output_dir(self, output_root: Path) -> Path:
        return self.output_dir or output_root / self.run_name

    def to_model_config(self) -> ModelConfig:
        """Validated network configuration.

        Raises:
            ConfigError: if a hyperparameter is out of range
        """
        return ModelConfig(
            kernel_size=self.kernel_size,
            filters=self.filters,
            lstm_hidden=self.lstm_hidden,
            bidirectional=self.bidirectional,
            structural_latent=self.structural_latent,
            classifier_hidden=self.classifier_hidden,
            beta=self.beta,
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            epochs=self.epochs,
            seed=self.seed,
            decision_threshold=self.decision_threshold,
            ablation=self.ablation,
            allow_custom_kernel=self.allow_custom_kernel,
        )

    def with_overrides(self, **changes: Any) -> "RunConfig":
        """Copy with ``changes`` applied and re-validated."""
        payload = self.model_dump(mode="json")
        payload.update(changes)
        return validate_run_config(payload)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(payload: dict[str, Any], overrides: list[str]) -> dict[str, Any]:
    """Apply ``key=value`` strings; dotted keys reach nested sections.

    Values are read as JSON when possible (``8``, ``true``, ``[8, 16]``)
    and as plain strings otherwise.

    Raises:
        ConfigError: on an override without ``=``
    """
    result = json.loads(json.dumps(payload))
    for override in overrides:
        key, sep, raw = override.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"Override '{override}' is not of the form key=value")
        *parents, leaf = key.strip().split(".")
        target = result
        for parent in parents:
            target = target.setdefault(parent, {})
            if not isinstance(target, dict):
                raise ConfigError(f"Override '{override}' addresses a non-section key")
        target[leaf] = _parse_value(raw)
    return result


def validate_run_config(payload: dict[str, Any]) -> RunConfig:
    """Validate a raw payload into a RunConfig, model hyperparameters included.

    Raises:
        ConfigError: with every validation problem on one line
    """
    try:
        config = RunConfig.model_validate(payload)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or 'config'}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigError(f"Invalid run config: {problems}") from e
    config.to_model_config()
    return config


def load_run_config(path: Path | None, overrides: list[str] | None = None) -> RunConfig:
    """Read the JSON config at ``path`` (if any) and apply overrides.

    Raises:
        PathError: if ``path`` does not exist
        ConfigError: on malformed JSON or invalid values
    """
    payload: dict[str, Any] = {}
    if path is not None:
        if not path.is_file():
            raise PathError(f"Config file not found: {path}")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e
        if not isinstance(payload, dict):
            raise ConfigError(f"Config file {path} must hold a JSON object")
    return validate_run_config(apply_overrides(payload, overrides or []))
