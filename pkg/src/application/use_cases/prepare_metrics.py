"""Prepare metrics use case - CK export to a standardized metric matrix."""

from pathlib import Path

from application.ports import ArtifactStore, DatasetSource
from domain.entities import MetricMatrix
from domain.enums import MetricLevel
from domain.services import MetricPipeline
from domain.services.metric_preprocessing import DEFAULT_NEIGHBORS, DEFAULT_SPARSITY_THRESHOLD
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class PrepareMetricsUseCase:
    """Run the metric pipeline over a whole export and persist matrix and state.

    Train/test runs refit the pipeline per fold; this command is for
    inspecting a prepared table and for reusing its state at inference.
    """

    def __init__(self, source: DatasetSource, store: ArtifactStore) -> None:
        self.source = source
        self.store = store

    async def execute(
        self,
        ck_csv: Path,
        level: MetricLevel,
        n_neighbors: int = DEFAULT_NEIGHBORS,
        sparsity_threshold: float = DEFAULT_SPARSITY_THRESHOLD,
    ) -> MetricMatrix:
        table = self.source.load_metric_table(ck_csv, level)
        state = MetricPipeline.fit(table, n_neighbors, sparsity_threshold)
        matrix = MetricPipeline.transform(state, table)
        self.store.save_metric_matrix(matrix, state)
        logger.info(
            "Metrics prepared",
            level=level.value,
            rows=len(matrix.sample_ids),
            features=len(matrix.feature_names),
            removed_constant=list(state.removed_constant),
            removed_sparse=list(state.removed_sparse),
        )
        return matrix
