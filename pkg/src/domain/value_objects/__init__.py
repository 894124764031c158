"""Value objects - Immutable descriptions of configurations and results."""

from domain.value_objects.confusion import ConfusionMatrix
from domain.value_objects.history import TrainingHistory
from domain.value_objects.model_config import BETA_GRID, KERNEL_GRID, ModelConfig
from domain.value_objects.reports import (
    AGGREGATION_RULE,
    METRIC_NAMES,
    FoldOutcome,
    FoldReport,
    FoldScores,
    PredictionRecord,
)

__all__ = [
    "ConfusionMatrix",
    "TrainingHistory",
    "ModelConfig",
    "KERNEL_GRID",
    "BETA_GRID",
    "FoldScores",
    "PredictionRecord",
    "FoldOutcome",
    "FoldReport",
    "AGGREGATION_RULE",
    "METRIC_NAMES",
]
