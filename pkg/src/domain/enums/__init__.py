"""Domain enums - Type definitions for domain entities."""

from domain.enums.pipeline import (
    ENCODER_AGGREGATION,
    Ablation,
    Activation,
    Aggregation,
    ColumnKind,
    EncoderKind,
    MetricLevel,
    Protocol,
)
from domain.enums.smell import Severity, Smell

__all__ = [
    "Smell",
    "Severity",
    "MetricLevel",
    "ColumnKind",
    "EncoderKind",
    "Aggregation",
    "ENCODER_AGGREGATION",
    "Protocol",
    "Ablation",
    "Activation",
]
