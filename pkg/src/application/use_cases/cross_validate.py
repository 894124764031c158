"""Cross-validate use case - stratified k-fold with fold-internal fitting."""

from application.ports import ArtifactStore
from application.services import (
    ConcurrentRunner,
    FeatureBuilder,
    FoldResult,
    RawDataset,
    train_fold,
)
from domain.enums import Protocol
from domain.services import score, stratified_kfold
from domain.value_objects import FoldOutcome, FoldReport, ModelConfig, PredictionRecord
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class CrossValidateUseCase:
    """Train one model per fold, concurrently, and aggregate by arithmetic mean.

    A fold that fails is recorded as failed and the aggregate covers the
    completed folds. If every fold fails, the first error is raised after
    the report has been written.
    """

    def __init__(self, store: ArtifactStore, runner: ConcurrentRunner) -> None:
        self.store = store
        self.runner = runner

    async def execute(
        self,
        dataset: RawDataset,
        config: ModelConfig,
        builder: FeatureBuilder,
        folds: int = 5,
        run_name: str = "run",
    ) -> FoldReport:
        assignment = stratified_kfold(dataset.corpus.labels, folds, config.seed)
        every_index = range(len(dataset))
        partitions = []
        for number, test_indices in enumerate(assignment, start=1):
            held_out = set(test_indices)
            train_indices = [i for i in every_index if i not in held_out]
            partitions.append(
                (number, dataset.subset(train_indices), dataset.subset(test_indices))
            )

        def run_partition(partition: tuple[int, RawDataset, RawDataset]) -> FoldResult:
            number, train_part, test_part = partition
            return train_fold(number, train_part, test_part, config, builder)

        outcomes = await self.runner.map(run_partition, partitions)

        fold_outcomes: list[FoldOutcome] = []
        predictions: list[PredictionRecord] = []
        first_error: Exception | None = None
        for outcome, (number, _, _) in zip(outcomes, partitions, strict=True):
            if outcome.result is not None:
                result = outcome.result
                fold_outcomes.append(
                    FoldOutcome(number, score(result.confusion), result.confusion)
                )
                predictions.extend(result.predictions)
                self.store.save_history(result.history, f"history_fold{number}")
                continue
            error = outcome.error
            logger.warning("Fold failed", run=run_name, fold=number, error=str(error))
            fold_outcomes.append(FoldOutcome(number, error=f"{type(error).__name__}: {error}"))
            if first_error is None and isinstance(error, Exception):
                first_error = error

        report = FoldReport(
            run=run_name,
            smell=dataset.corpus.smell,
            protocol=Protocol.CV5,
            config_fingerprint=config.fingerprint(),
            seed=config.seed,
            folds=tuple(fold_outcomes),
        )
        self.store.save_report(report)
        self.store.save_predictions(predictions)

        if report.completed_folds < folds:
            logger.warning(
                "Aggregate covers fewer folds than requested",
                run=run_name,
                completed=report.completed_folds,
                requested=folds,
            )
        if report.aggregate is None and first_error is not None:
            raise first_error
        if report.aggregate is not None:
            precision, recall, f1, mcc = report.aggregate.as_tuple()
            logger.info(
                "Cross-validation finished",
                run=run_name,
                precision=precision,
                recall=recall,
                f1=f1,
                mcc=mcc,
            )
        return report
