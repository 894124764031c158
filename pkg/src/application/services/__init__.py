"""Application services for cross-cutting concerns."""

from application.services.concurrent_runner import ConcurrentRunner, JobOutcome
from application.services.dataset import DatasetRequest, RawDataset
from application.services.feature_builder import FeatureBuilder, FittedFeatures
from application.services.fold_trainer import FoldResult, train_fold
from application.services.reporting import (
    COMPARISON_COLUMNS,
    FOLD_COLUMNS,
    fold_rows,
    format_score,
    render_report,
)

__all__ = [
    "ConcurrentRunner",
    "JobOutcome",
    "DatasetRequest",
    "RawDataset",
    "FeatureBuilder",
    "FittedFeatures",
    "FoldResult",
    "train_fold",
    "render_report",
    "fold_rows",
    "format_score",
    "FOLD_COLUMNS",
    "COMPARISON_COLUMNS",
]
