"""Enums describing metric tables, encoders, protocols and network pieces."""

from enum import Enum


class MetricLevel(Enum):
    """Granularity of a CK metric export."""

    CLASS = "class"
    METHOD = "method"


class ColumnKind(Enum):
    """How a metric column's cells are interpreted."""

    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


class EncoderKind(Enum):
    """Source of the per-sample semantic input."""

    TOKEN_INDEX = "token_index"
    CODE2VEC = "code2vec"
    CUBERT = "cubert"
    CODEBERT = "codebert"

    @property
    def uses_embeddings(self) -> bool:
        """Whether the encoder reads a precomputed embedding file."""
        return self is not EncoderKind.TOKEN_INDEX


class Aggregation(Enum):
    """Rule for folding several unit vectors into one sample vector."""

    SUM = "sum"
    MEAN = "mean"
    SINGLE = "single"


ENCODER_AGGREGATION: dict[EncoderKind, Aggregation] = {
    EncoderKind.CODE2VEC: Aggregation.MEAN,
    EncoderKind.CUBERT: Aggregation.SUM,
    EncoderKind.CODEBERT: Aggregation.SINGLE,
}


class Protocol(Enum):
    """Evaluation protocol that produced a report."""

    SPLIT_80_20 = "split80_20"
    CV5 = "cv5"


class Ablation(Enum):
    """Which feature branches feed the classifier."""

    FULL = "full"
    SEMANTIC_ONLY = "semantic_only"
    STRUCTURAL_ONLY = "structural_only"

    @property
    def uses_semantic(self) -> bool:
        return self is not Ablation.STRUCTURAL_ONLY

    @property
    def uses_structural(self) -> bool:
        return self is not Ablation.SEMANTIC_ONLY


class Activation(Enum):
    """Activation applied after a dense layer."""

    IDENTITY = "identity"
    RELU = "relu"
    SIGMOID = "sigmoid"
