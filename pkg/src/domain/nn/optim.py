"""Plain stochastic gradient descent."""

from collections.abc import Sequence

import numpy as np

from domain.exceptions import ContractViolation, NumericError
from domain.nn.parameter import Parameter


def sgd_step(params: Sequence[tuple[str, Parameter]], learning_rate: float) -> None:
    """Apply ``p <- p - lr * grad`` to every trainable parameter, then zero gradients.

    No parameter is touched if any gradient is non-finite.

    Raises:
        ContractViolation: if ``learning_rate`` <= 0
        NumericError: naming the first parameter with a non-finite gradient
    """
    if learning_rate <= 0:
        raise ContractViolation(f"learning_rate must be positive, got {learning_rate}")
    for name, parameter in params:
        if not np.all(np.isfinite(parameter.grad)):
            raise NumericError(f"Non-finite gradient in {name}")
    for _, parameter in params:
        if parameter.trainable:
            parameter.value -= learning_rate * parameter.grad
        parameter.zero_grad()


class SGD:
    """SGD over a fixed set of named parameters (no momentum, no weight decay)."""

    def __init__(self, params: Sequence[tuple[str, Parameter]], learning_rate: float) -> None:
        self.params = [(name, p) for name, p in params if p.trainable]
        self.learning_rate = learning_rate

    def step(self) -> None:
        sgd_step(self.params, self.learning_rate)

    def zero_grad(self) -> None:
        for _, parameter in self.params:
            parameter.zero_grad()
