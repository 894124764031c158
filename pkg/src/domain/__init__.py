"""Domain layer - Core business logic."""

from domain.entities import (
    EmbeddingTable,
    LabeledCorpus,
    LabeledSample,
    MetricMatrix,
    RawMetricTable,
    ReviewRecord,
    TokenSequence,
    Vocab,
)
from domain.enums import Ablation, EncoderKind, MetricLevel, Protocol, Severity, Smell
from domain.exceptions import (
    ConfigError,
    ContractViolation,
    DataError,
    DomainError,
    FormatError,
    NumericError,
)
from domain.value_objects import ConfusionMatrix, FoldReport, FoldScores, ModelConfig

__all__ = [
    # Entities
    "ReviewRecord",
    "LabeledSample",
    "LabeledCorpus",
    "RawMetricTable",
    "MetricMatrix",
    "TokenSequence",
    "Vocab",
    "EmbeddingTable",
    # Value Objects
    "ModelConfig",
    "ConfusionMatrix",
    "FoldScores",
    "FoldReport",
    # Enums
    "Smell",
    "Severity",
    "MetricLevel",
    "EncoderKind",
    "Protocol",
    "Ablation",
    # Exceptions
    "DomainError",
    "ConfigError",
    "ContractViolation",
    "DataError",
    "FormatError",
    "NumericError",
]
