"""Gradient-check use case - finite-difference verification of every layer."""

from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from domain.enums import Activation
from domain.model import EnsembleNetwork, build_model
from domain.nn import (
    LSTM,
    BatchNorm1d,
    Conv1d,
    Dense,
    GradCheckResult,
    MaxPool1d,
    Module,
    Sequential,
    check_weighted_bce,
    compare_gradients,
    grad_check,
    weighted_bce,
)
from domain.value_objects import ModelConfig
from infrastructure.logging import get_logger

logger = get_logger(__name__)

DEFAULT_SEEDS: tuple[int, ...] = (0, 1, 2, 3, 4)
LAYER_TOLERANCE = 1e-4
MODEL_TOLERANCE = 1e-3

Array = NDArray[np.float64]
Case = Callable[[np.random.Generator], tuple[Module, Array]]

# Input length 20 >= 4 * 3 + 5, the minimum for kernel 3.
TINY_MODEL = ModelConfig(
    kernel_size=3,
    filters=(2, 3),
    lstm_hidden=3,
    structural_latent=4,
    classifier_hidden=(5, 4),
)
TINY_INPUT_LENGTH = 20
TINY_METRICS = 3
# Conv biases feeding batch norm cancel out of the output.
_ZERO_GRADIENT_PARAMETERS = frozenset({"semantic.0.bias", "semantic.4.bias"})


def _dense(rng: np.random.Generator) -> tuple[Module, Array]:
    return Dense(5, 4, rng, Activation.SIGMOID), rng.standard_normal((3, 5))


def _dense_relu(rng: np.random.Generator) -> tuple[Module, Array]:
    return Dense(5, 4, rng, Activation.RELU), rng.standard_normal((3, 5))


def _conv1d(rng: np.random.Generator) -> tuple[Module, Array]:
    return Conv1d(2, 3, 3, rng), rng.standard_normal((2, 2, 10))


def _batchnorm(rng: np.random.Generator) -> tuple[Module, Array]:
    layer = BatchNorm1d(3)
    layer.gamma.value[:] = rng.uniform(0.5, 1.5, 3)
    layer.beta.value[:] = rng.standard_normal(3)
    return layer, rng.standard_normal((4, 3, 5))


def _conv_pool(rng: np.random.Generator) -> tuple[Module, Array]:
    return Sequential(Conv1d(1, 2, 3, rng), MaxPool1d()), rng.standard_normal((2, 1, 11))


def _lstm(rng: np.random.Generator) -> tuple[Module, Array]:
    return LSTM(3, 4, rng, bidirectional=False), rng.standard_normal((2, 3, 3))


def _bilstm(rng: np.random.Generator) -> tuple[Module, Array]:
    return LSTM(3, 4, rng, bidirectional=True), rng.standard_normal((2, 3, 3))


LAYER_CASES: dict[str, Case] = {
    "dense": _dense,
    "dense_relu": _dense_relu,
    "conv1d": _conv1d,
    "batchnorm1d": _batchnorm,
    "conv1d_maxpool": _conv_pool,
    "lstm": _lstm,
    "bilstm": _bilstm,
}


def _model_error(network: EnsembleNetwork, rng: np.random.Generator, max_coords: int) -> float:
    network.train()
    x = rng.standard_normal((4, TINY_INPUT_LENGTH + TINY_METRICS))
    labels = np.array([0.0, 1.0, 0.0, 1.0])

    network.zero_grad()
    _, grad = weighted_bce(network.forward(x), labels, 2.0)
    dx = network.backward(grad)
    targets = {"input": (x, dx.copy())}
    for name, parameter in network.trainable_parameters():
        if name not in _ZERO_GRADIENT_PARAMETERS:
            targets[name] = (parameter.value, parameter.grad.copy())

    def objective() -> float:
        return weighted_bce(network.forward(x), labels, 2.0)[0]

    return compare_gradients(objective, targets, rng, max_coords=max_coords)


def check_assembled_model(seeds: Sequence[int], max_coords: int = 12) -> float:
    """End-to-end check of the fused network and loss on 4-sample batches."""
    worst = 0.0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        network = build_model(TINY_MODEL, TINY_INPUT_LENGTH, TINY_METRICS, rng)
        worst = max(worst, _model_error(network, rng, max_coords))
    return worst


class RunGradcheckUseCase:
    """Compare analytic gradients with central differences for every layer.

    Layers and the loss must stay below 1e-4; the assembled model below 1e-3.
    """

    async def execute(self, seeds: Sequence[int] = DEFAULT_SEEDS) -> list[GradCheckResult]:
        results: list[GradCheckResult] = []
        for name, case in LAYER_CASES.items():
            results.append(GradCheckResult(name, grad_check(case, seeds), LAYER_TOLERANCE))
        results.append(
            GradCheckResult("weighted_bce", check_weighted_bce(seeds), LAYER_TOLERANCE)
        )
        results.append(
            GradCheckResult("ensemble", check_assembled_model(seeds), MODEL_TOLERANCE)
        )

        for result in results:
            log = logger.info if result.passed else logger.error
            log(
                "Gradient check",
                check=result.name,
                max_relative_error=result.max_relative_error,
                tolerance=result.tolerance,
                passed=result.passed,
            )
        return results
