"""Class-weighted binary cross-entropy."""

import numpy as np
from numpy.typing import NDArray

from domain.exceptions import ConfigError, ContractViolation, ShapeError

PROBABILITY_CLAMP = 1e-12


def weighted_bce(
    pred: NDArray[np.float64],
    target: NDArray[np.float64] | NDArray[np.int64],
    beta: float,
) -> tuple[float, NDArray[np.float64]]:
    """Mean of ``-(beta * t * log(p) + (1 - t) * log(1 - p))`` over the batch.

    Probabilities are clamped to ``[1e-12, 1 - 1e-12]``; the gradient is
    zero wherever the clamp was active.

    Returns:
        The scalar loss and its gradient w.r.t. ``pred``.

    Raises:
        ConfigError: if ``beta`` <= 0
        ShapeError: if ``pred`` and ``target`` shapes differ
        ContractViolation: if the batch is empty or a target is not binary
    """
    if beta <= 0:
        raise ConfigError(f"beta must be positive, got {beta}")
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise ShapeError(f"Prediction shape {pred.shape} != target shape {target.shape}")
    if pred.size == 0:
        raise ContractViolation("weighted_bce needs a non-empty batch")
    if not np.all((target == 0) | (target == 1)):
        raise ContractViolation("Targets must be 0 or 1")

    p = np.clip(pred, PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)
    per_sample = -(beta * target * np.log(p) + (1.0 - target) * np.log(1.0 - p))
    grad = -(beta * target / p - (1.0 - target) / (1.0 - p)) / pred.size
    grad = np.where(p == pred, grad, 0.0)
    return float(per_sample.mean()), grad
