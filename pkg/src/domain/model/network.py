"""Fused network: convolutional/recurrent semantic branch, metric branch, classifier."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from domain.enums import Activation
from domain.exceptions import ShapeError
from domain.nn import (
    LSTM,
    BatchNorm1d,
    Conv1d,
    Dense,
    MaxPool1d,
    Module,
    ReLU,
    Sequential,
)
from domain.nn.layers import POOL_WINDOW
from domain.value_objects import ModelConfig

Array = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class SemanticChain:
    """Sequence lengths after each stage of the semantic branch."""

    input_length: int
    conv1: int
    pool1: int
    conv2: int
    pool2: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.conv1, self.pool1, self.conv2, self.pool2)


def minimum_input_length(kernel_size: int) -> int:
    """Shortest input surviving two conv(k) + pool(3) stages."""
    return 4 * kernel_size + 5


def semantic_chain(input_length: int, kernel_size: int) -> SemanticChain:
    """Lengths ``L - k + 1`` and ``floor(L / 3)`` through both stages.

    Raises:
        ShapeError: if ``input_length`` is below the minimum for ``kernel_size``
    """
    minimum = minimum_input_length(kernel_size)
    if input_length < minimum:
        raise ShapeError(
            f"Input length {input_length} too short for kernel {kernel_size}; "
            f"minimum is {minimum}"
        )
    conv1 = input_length - kernel_size + 1
    pool1 = conv1 // POOL_WINDOW
    conv2 = pool1 - kernel_size + 1
    pool2 = conv2 // POOL_WINDOW
    return SemanticChain(input_length, conv1, pool1, conv2, pool2)


def seeded_generators(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent generators for parameter initialization and batch shuffling."""
    init_seq, shuffle_seq = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(init_seq), np.random.default_rng(shuffle_seq)


class EnsembleNetwork(Module):
    """Semantic and structural extractors whose outputs are concatenated and classified.

    Either branch can be disabled through ``config.ablation``; the classifier
    input width is the sum of the enabled branch widths.
    """

    def __init__(
        self,
        config: ModelConfig,
        input_length: int,
        n_metrics: int,
        rng: np.random.Generator,
    ) -> None:
        super().__init__()
        self.config = config
        self.input_length = input_length
        self.n_metrics = n_metrics
        self.semantic: Sequential | None = None
        self.recurrent: LSTM | None = None
        self.structural: Dense | None = None
        self._steps = 0

        k = config.kernel_size
        first, second = config.filters
        if config.ablation.uses_semantic:
            self._steps = semantic_chain(input_length, k).pool2
            self.semantic = Sequential(
                Conv1d(1, first, k, rng),
                BatchNorm1d(first),
                ReLU(),
                MaxPool1d(),
                Conv1d(first, second, k, rng),
                BatchNorm1d(second),
                ReLU(),
                MaxPool1d(),
            )
            self.add_module("semantic", self.semantic)
            self.recurrent = LSTM(second, config.lstm_hidden, rng, config.bidirectional)
            self.add_module("recurrent", self.recurrent)
        if config.ablation.uses_structural:
            if n_metrics < 1:
                raise ShapeError("The structural branch needs at least one metric")
            self.structural = Dense(n_metrics, config.structural_latent, rng, Activation.RELU)
            self.add_module("structural", self.structural)

        hidden_1, hidden_2 = config.classifier_hidden
        self.classifier = Sequential(
            Dense(config.classifier_input_width, hidden_1, rng, Activation.RELU),
            Dense(hidden_1, hidden_2, rng, Activation.RELU),
            Dense(hidden_2, 1, rng, Activation.SIGMOID),
        )
        self.add_module("classifier", self.classifier)

    def _check_inputs(self, semantic: Array | None, structural: Array | None) -> int:
        sizes = set()
        if self.semantic is not None:
            if semantic is None or semantic.ndim != 2 or semantic.shape[1] != self.input_length:
                shape = None if semantic is None else semantic.shape
                raise ShapeError(
                    f"Semantic input must have shape (batch, {self.input_length}), got {shape}"
                )
            sizes.add(semantic.shape[0])
        if self.structural is not None:
            if structural is None or structural.ndim != 2 or structural.shape[1] != self.n_metrics:
                shape = None if structural is None else structural.shape
                raise ShapeError(
                    f"Structural input must have shape (batch, {self.n_metrics}), got {shape}"
                )
            sizes.add(structural.shape[0])
        if len(sizes) != 1:
            raise ShapeError(f"Branch inputs disagree on batch size: {sorted(sizes)}")
        return sizes.pop()

    def forward_pair(self, semantic: Array | None, structural: Array | None) -> Array:
        """Probabilities of shape ``(batch,)`` for a batch of paired inputs."""
        self._check_inputs(semantic, structural)
        parts: list[Array] = []
        if self.semantic is not None and self.recurrent is not None and semantic is not None:
            features = self.semantic.forward(semantic[:, None, :].astype(np.float64))
            parts.append(self.recurrent.forward(features.transpose(0, 2, 1)))
        if self.structural is not None and structural is not None:
            parts.append(self.structural.forward(structural.astype(np.float64)))
        return self.classifier.forward(np.concatenate(parts, axis=1))[:, 0]

    def backward_pair(self, grad: Array) -> tuple[Array | None, Array | None]:
        """Backpropagate d(loss)/d(probability); returns gradients of both inputs."""
        d_fused = self.classifier.backward(grad[:, None])
        d_semantic = d_structural = None
        offset = 0
        if self.semantic is not None and self.recurrent is not None:
            width = self.config.semantic_width
            d_features = self.recurrent.backward(d_fused[:, :width])
            d_semantic = self.semantic.backward(d_features.transpose(0, 2, 1))[:, 0, :]
            offset = width
        if self.structural is not None:
            d_structural = self.structural.backward(d_fused[:, offset:])
        return d_semantic, d_structural

    def forward(self, x: Array) -> Array:
        """Single-array entry point; ``x`` is the semantic input, metrics the tail.

        Columns ``[:input_length]`` feed the semantic branch (when enabled)
        and the remaining ``n_metrics`` columns the structural branch.
        """
        semantic, structural = self.split_inputs(x)
        return self.forward_pair(semantic, structural)

    def backward(self, grad: Array) -> Array:
        d_semantic, d_structural = self.backward_pair(grad)
        parts = [g for g in (d_semantic, d_structural) if g is not None]
        return np.concatenate(parts, axis=1)

    def split_inputs(self, x: Array) -> tuple[Array | None, Array | None]:
        offset = self.input_length if self.semantic is not None else 0
        semantic = x[:, :offset] if self.semantic is not None else None
        structural = x[:, offset:] if self.structural is not None else None
        return semantic, structural

    @property
    def recurrent_steps(self) -> int:
        return self._steps


def build_model(
    config: ModelConfig,
    input_length: int,
    n_metrics: int,
    rng: np.random.Generator | None = None,
) -> EnsembleNetwork:
    """Build a freshly initialized network.

    Without an explicit ``rng`` the initialization generator derived from
    ``config.seed`` is used.

    Raises:
        ShapeError: if ``input_length`` is below ``minimum_input_length(k)``
    """
    if rng is None:
        rng, _ = seeded_generators(config.seed)
    return EnsembleNetwork(config, input_length, n_metrics, rng)
