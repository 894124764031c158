"""Application use cases - Business operations."""

from application.use_cases.cross_validate import CrossValidateUseCase
from application.use_cases.encode_inputs import EncodeInputsUseCase, EncodeResult
from application.use_cases.label_corpus import LabelCorpusUseCase
from application.use_cases.load_dataset import LoadDatasetUseCase
from application.use_cases.prepare_metrics import PrepareMetricsUseCase
from application.use_cases.render_report import RenderReportUseCase
from application.use_cases.run_gradcheck import RunGradcheckUseCase
from application.use_cases.run_sweep import RunSweepUseCase, SweepPoint, SweepResult, point_name
from application.use_cases.train_model import TrainModelUseCase, TrainResult

__all__ = [
    "LabelCorpusUseCase",
    "LoadDatasetUseCase",
    "PrepareMetricsUseCase",
    "EncodeInputsUseCase",
    "EncodeResult",
    "TrainModelUseCase",
    "TrainResult",
    "CrossValidateUseCase",
    "RenderReportUseCase",
    "RunGradcheckUseCase",
    "RunSweepUseCase",
    "SweepPoint",
    "SweepResult",
    "point_name",
]
