"""Train model use case - stratified hold-out split, checkpoint and report."""

from dataclasses import dataclass

from application.ports import ArtifactStore
from application.services import (
    ConcurrentRunner,
    FeatureBuilder,
    FoldResult,
    RawDataset,
    train_fold,
)
from domain.enums import Protocol
from domain.services import score, split_train_test
from domain.value_objects import FoldOutcome, FoldReport, ModelConfig
from infrastructure.logging import get_logger

logger = get_logger(__name__)

HOLDOUT_FOLD = 1


@dataclass(frozen=True, slots=True)
class TrainResult:
    """Report of the held-out evaluation plus the trained fold."""

    report: FoldReport
    fold: FoldResult


class TrainModelUseCase:
    """Fit on a stratified training split, evaluate on the held-out split.

    Writes checkpoint, training history, report and predictions.

    Usage:
        with ConcurrentRunner(max_workers=1) as runner:
            use_case = TrainModelUseCase(store, runner)
            result = await use_case.execute(dataset, config, FeatureBuilder())
    """

    def __init__(self, store: ArtifactStore, runner: ConcurrentRunner) -> None:
        self.store = store
        self.runner = runner

    async def execute(
        self,
        dataset: RawDataset,
        config: ModelConfig,
        builder: FeatureBuilder,
        test_fraction: float = 0.2,
        run_name: str = "run",
    ) -> TrainResult:
        train_corpus, test_corpus = split_train_test(dataset.corpus, test_fraction, config.seed)
        logger.info(
            "Hold-out split",
            train_samples=len(train_corpus),
            test_samples=len(test_corpus),
            test_positives=test_corpus.n_positive,
        )
        fold = await self.runner.run(
            train_fold,
            HOLDOUT_FOLD,
            dataset.with_corpus(train_corpus),
            dataset.with_corpus(test_corpus),
            config,
            builder,
        )
        report = FoldReport(
            run=run_name,
            smell=dataset.corpus.smell,
            protocol=Protocol.SPLIT_80_20,
            config_fingerprint=config.fingerprint(),
            seed=config.seed,
            folds=(FoldOutcome(HOLDOUT_FOLD, score(fold.confusion), fold.confusion),),
        )

        self.store.save_checkpoint(fold.model)
        self.store.save_history(fold.history)
        self.store.save_report(report)
        self.store.save_predictions(fold.predictions)
        logger.info("Hold-out evaluated", run=run_name, **_scores(report))
        return TrainResult(report=report, fold=fold)


def _scores(report: FoldReport) -> dict[str, float]:
    if report.aggregate is None:
        return {}
    precision, recall, f1, mcc = report.aggregate.as_tuple()
    return {"precision": precision, "recall": recall, "f1": f1, "mcc": mcc}
