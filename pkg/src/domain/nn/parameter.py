"""Named parameter tensors and the module base class."""

from abc import ABC, abstractmethod
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray


@dataclass(slots=True, eq=False)
class Parameter:
    """A float64 tensor with a same-shape gradient buffer.

    Buffers (e.g. batch-norm running statistics) are parameters with
    ``trainable=False``: they are checkpointed but never stepped.
    """

    value: NDArray[np.float64]
    trainable: bool = True
    grad: NDArray[np.float64] = field(init=False)

    def __post_init__(self) -> None:
        self.value = np.ascontiguousarray(self.value, dtype=np.float64)
        self.grad = np.zeros_like(self.value)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.value.shape)

    def zero_grad(self) -> None:
        self.grad.fill(0.0)


def uniform_init(
    rng: np.random.Generator, shape: tuple[int, ...], fan_in: int
) -> NDArray[np.float64]:
    """Uniform samples in ``[-sqrt(1/fan_in), sqrt(1/fan_in))``."""
    bound = np.sqrt(1.0 / fan_in)
    return rng.uniform(-bound, bound, size=shape)


class Module(ABC):
    """A differentiable layer.

    ``forward`` caches what ``backward`` needs; ``backward`` accumulates
    parameter gradients and returns the gradient w.r.t. the input of the
    most recent ``forward`` call.
    """

    def __init__(self) -> None:
        self.training = True
        self._params: dict[str, Parameter] = {}
        self._children: dict[str, Module] = {}

    def add_parameter(self, name: str, parameter: Parameter) -> Parameter:
        self._params[name] = parameter
        return parameter

    def add_module(self, name: str, module: "Module") -> "Module":
        self._children[name] = module
        return module

    def named_parameters(self, prefix: str = "") -> Iterator[tuple[str, Parameter]]:
        """All parameters and buffers, depth first, with dotted names."""
        for name, parameter in self._params.items():
            yield f"{prefix}{name}", parameter
        for child_name, child in self._children.items():
            yield from child.named_parameters(f"{prefix}{child_name}.")

    def trainable_parameters(self) -> list[tuple[str, Parameter]]:
        return [(name, p) for name, p in self.named_parameters() if p.trainable]

    def zero_grad(self) -> None:
        for _, parameter in self.named_parameters():
            parameter.zero_grad()

    def train(self) -> None:
        self.set_training(True)

    def eval(self) -> None:
        self.set_training(False)

    def set_training(self, training: bool) -> None:
        self.training = training
        for child in self._children.values():
            child.set_training(training)

    @abstractmethod
    def forward(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Compute the layer output."""
        ...

    @abstractmethod
    def backward(self, grad: NDArray[np.float64]) -> NDArray[np.float64]:
        """Backpropagate ``grad`` (same shape as the last output)."""
        ...
