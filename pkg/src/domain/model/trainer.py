"""Mini-batch SGD training loop and thresholded prediction."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from domain.exceptions import ContractViolation, DegenerateCorpusError, NumericError, ShapeError
from domain.model.network import EnsembleNetwork, seeded_generators
from domain.nn import SGD, weighted_bce
from domain.value_objects import ModelConfig, TrainingHistory

Array = NDArray[np.float64]
EpochCallback = Callable[[int, float], None]


@dataclass(frozen=True, slots=True)
class TrainingData:
    """Row-aligned network inputs.

    Attributes:
        semantic: ``(n, input_length)`` sequence values, None if the branch is off
        structural: ``(n, n_metrics)`` standardized metrics, None if the branch is off
        labels: ``(n,)`` binary labels
    """

    semantic: Array | None
    structural: Array | None
    labels: NDArray[np.int64]

    def __post_init__(self) -> None:
        n = len(self.labels)
        for name, block in (("semantic", self.semantic), ("structural", self.structural)):
            if block is not None and (block.ndim != 2 or block.shape[0] != n):
                raise ShapeError(f"{name} block has shape {block.shape}; expected {n} rows")
        if self.semantic is None and self.structural is None:
            raise ContractViolation("At least one input block is required")

    def __len__(self) -> int:
        return len(self.labels)

    def rows(self, indices: NDArray[np.intp]) -> "TrainingData":
        return TrainingData(
            semantic=None if self.semantic is None else self.semantic[indices],
            structural=None if self.structural is None else self.structural[indices],
            labels=self.labels[indices],
        )


def _forward(network: EnsembleNetwork, data: TrainingData) -> Array:
    return network.forward_pair(data.semantic, data.structural)


def evaluate_loss(network: EnsembleNetwork, data: TrainingData, beta: float) -> float:
    """Weighted loss of the whole set in evaluation mode."""
    network.eval()
    loss, _ = weighted_bce(_forward(network, data), data.labels, beta)
    return loss


def train(
    network: EnsembleNetwork,
    data: TrainingData,
    config: ModelConfig | None = None,
    shuffle_rng: np.random.Generator | None = None,
    batch_orders: Sequence[NDArray[np.intp]] | None = None,
    on_epoch: EpochCallback | None = None,
) -> TrainingHistory:
    """Train for ``config.epochs`` passes of shuffled mini-batches; no early stopping.

    Args:
        network: Model to update in place
        data: Training inputs and labels
        config: Hyperparameters (defaults to the network's own)
        shuffle_rng: Generator for batch order (defaults to one derived from the seed)
        batch_orders: Explicit per-epoch permutations, overriding the shuffle
        on_epoch: Called with ``(epoch, mean_loss)`` after each epoch

    Returns:
        Per-epoch mean batch losses and the loss before training.

    Raises:
        DegenerateCorpusError: if the data is empty or single-class
        NumericError: on a non-finite loss or gradient, naming epoch and batch
    """
    config = config or network.config
    n = len(data)
    if n == 0 or len(np.unique(data.labels)) < 2:
        raise DegenerateCorpusError("Training data needs samples of both classes")
    if batch_orders is not None and len(batch_orders) < config.epochs:
        raise ContractViolation(
            f"{len(batch_orders)} batch orders given for {config.epochs} epochs"
        )
    if shuffle_rng is None:
        _, shuffle_rng = seeded_generators(config.seed)

    history = TrainingHistory(initial_loss=evaluate_loss(network, data, config.beta))
    optimizer = SGD(network.trainable_parameters(), config.learning_rate)
    network.train()
    optimizer.zero_grad()

    for epoch in range(1, config.epochs + 1):
        order = batch_orders[epoch - 1] if batch_orders is not None else shuffle_rng.permutation(n)
        losses: list[float] = []
        for batch, start in enumerate(range(0, n, config.batch_size), start=1):
            chunk = data.rows(np.asarray(order[start : start + config.batch_size]))
            loss, grad = weighted_bce(_forward(network, chunk), chunk.labels, config.beta)
            if not np.isfinite(loss):
                raise NumericError(f"Non-finite loss at epoch {epoch}, batch {batch}")
            network.backward_pair(grad)
            try:
                optimizer.step()
            except NumericError as e:
                raise NumericError(f"{e} at epoch {epoch}, batch {batch}") from e
            losses.append(loss)
        mean_loss = float(np.mean(losses))
        history.epoch_losses.append(mean_loss)
        if on_epoch is not None:
            on_epoch(epoch, mean_loss)

    network.eval()
    return history


def predict_proba(
    network: EnsembleNetwork,
    semantic: Array | None,
    structural: Array | None,
) -> Array:
    """Probabilities in evaluation mode (running batch-norm statistics)."""
    network.eval()
    return network.forward_pair(semantic, structural)


def apply_threshold(probabilities: Array, threshold: float) -> NDArray[np.int64]:
    """1 where probability >= threshold."""
    return (np.asarray(probabilities) >= threshold).astype(np.int64)


def predict(
    network: EnsembleNetwork,
    semantic: Array | None,
    structural: Array | None,
    threshold: float | None = None,
) -> NDArray[np.int64]:
    """Binary labels; the threshold defaults to ``config.decision_threshold``."""
    if threshold is None:
        threshold = network.config.decision_threshold
    return apply_threshold(predict_proba(network, semantic, structural), threshold)
