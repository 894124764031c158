"""Numeric core: layers with exact gradients, loss, SGD and gradient checks."""

from domain.nn.gradcheck import (
    GradCheckResult,
    check_module,
    check_weighted_bce,
    compare_gradients,
    grad_check,
    relative_error,
)
from domain.nn.layers import (
    LSTM,
    BatchNorm1d,
    Conv1d,
    Dense,
    MaxPool1d,
    ReLU,
    Sequential,
    sigmoid,
)
from domain.nn.loss import weighted_bce
from domain.nn.optim import SGD, sgd_step
from domain.nn.parameter import Module, Parameter

__all__ = [
    "Parameter",
    "Module",
    "Conv1d",
    "BatchNorm1d",
    "ReLU",
    "MaxPool1d",
    "LSTM",
    "Dense",
    "Sequential",
    "sigmoid",
    "weighted_bce",
    "SGD",
    "sgd_step",
    "GradCheckResult",
    "relative_error",
    "compare_gradients",
    "check_module",
    "grad_check",
    "check_weighted_bce",
]
