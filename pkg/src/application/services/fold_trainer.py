"""Fit, train and evaluate one model on one train/test partition."""

from dataclasses import dataclass

from application.services.dataset import RawDataset
from application.services.feature_builder import FeatureBuilder
from domain.model import EnsembleModel, apply_threshold, build_model, predict_proba, train
from domain.services import confusion
from domain.value_objects import ConfusionMatrix, ModelConfig, PredictionRecord, TrainingHistory
from infrastructure.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class FoldResult:
    """Everything one partition produced."""

    index: int
    model: EnsembleModel
    history: TrainingHistory
    confusion: ConfusionMatrix
    predictions: tuple[PredictionRecord, ...]


def train_fold(
    index: int,
    train_part: RawDataset,
    test_part: RawDataset,
    config: ModelConfig,
    builder: FeatureBuilder,
) -> FoldResult:
    """Fit preprocessing on ``train_part`` only, train, then score ``test_part``.

    Runs synchronously; callers push it into a worker thread.
    """
    fitted = builder.fit(train_part)
    train_inputs = builder.transform(fitted, train_part)
    test_inputs = builder.transform(fitted, test_part)

    network = build_model(config, fitted.input_length, fitted.n_metrics)
    logger.info(
        "Training fold",
        fold=index,
        train_samples=len(train_part),
        test_samples=len(test_part),
        input_length=fitted.input_length,
        n_metrics=fitted.n_metrics,
    )

    def log_epoch(epoch: int, mean_loss: float) -> None:
        logger.debug("Epoch finished", fold=index, epoch=epoch, mean_loss=mean_loss)

    history = train(network, train_inputs, config, on_epoch=log_epoch)

    probabilities = predict_proba(network, test_inputs.semantic, test_inputs.structural)
    predicted = apply_threshold(probabilities, config.decision_threshold)
    truth = test_inputs.labels
    matrix = confusion(predicted.tolist(), truth.tolist())
    records = tuple(
        PredictionRecord(
            fold=index,
            sample_id=sample_id,
            truth=int(truth[row]),
            probability=float(probabilities[row]),
            prediction=int(predicted[row]),
        )
        for row, sample_id in enumerate(test_part.corpus.sample_ids)
    )
    logger.info(
        "Fold evaluated",
        fold=index,
        final_loss=history.final_loss,
        tp=matrix.tp,
        fp=matrix.fp,
        fn=matrix.fn,
        tn=matrix.tn,
    )
    model = EnsembleModel(network=network, preprocessing=fitted.to_dict())
    return FoldResult(index, model, history, matrix, records)
