"""Application layer - Use cases and orchestration.

Use cases work with corpora, metric tables and encoded inputs without
knowing where they are stored (CSV exports, run directories, etc.).
"""

from application.ports import ArtifactStore, DatasetSource
from application.services import ConcurrentRunner, DatasetRequest, FeatureBuilder, RawDataset
from application.use_cases import (
    CrossValidateUseCase,
    EncodeInputsUseCase,
    LabelCorpusUseCase,
    LoadDatasetUseCase,
    PrepareMetricsUseCase,
    RenderReportUseCase,
    RunGradcheckUseCase,
    RunSweepUseCase,
    TrainModelUseCase,
)

__all__ = [
    "DatasetSource",
    "ArtifactStore",
    "ConcurrentRunner",
    "DatasetRequest",
    "RawDataset",
    "FeatureBuilder",
    "LabelCorpusUseCase",
    "LoadDatasetUseCase",
    "PrepareMetricsUseCase",
    "EncodeInputsUseCase",
    "TrainModelUseCase",
    "CrossValidateUseCase",
    "RenderReportUseCase",
    "RunGradcheckUseCase",
    "RunSweepUseCase",
]
