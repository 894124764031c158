"""Layer set of the fused network, each with an exact backward pass.

Shapes follow the channels-first convention: sequences are
``(batch, channels, length)``, recurrent inputs ``(batch, time, features)``
and dense inputs ``(batch, features)``.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import NDArray

from domain.enums import Activation
from domain.exceptions import ContractViolation, DataError, ShapeError
from domain.nn.parameter import Module, Parameter, uniform_init

BN_EPSILON = 1e-5
BN_MOMENTUM = 0.1
POOL_WINDOW = 3

Array = NDArray[np.float64]


def sigmoid(x: Array) -> Array:
    """Logistic function without overflow for large ``|x|``."""
    out = np.empty_like(x, dtype=np.float64)
    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))
    exp_x = np.exp(x[~positive])
    out[~positive] = exp_x / (1.0 + exp_x)
    return out


def _require_ndim(x: Array, ndim: int, layer: str) -> None:
    if x.ndim != ndim:
        raise ShapeError(f"{layer} expects a {ndim}-d input, got shape {x.shape}")


def _cached(value: Array | None, layer: str) -> Array:
    if value is None:
        raise ContractViolation(f"{layer}.backward called before forward")
    return value


class Conv1d(Module):
    """Valid cross-correlation with stride 1 and a bias per filter."""

    def __init__(
        self, in_channels: int, filters: int, kernel_size: int, rng: np.random.Generator
    ) -> None:
        super().__init__()
        self.in_channels = in_channels
        self.filters = filters
        self.kernel_size = kernel_size
        fan_in = in_channels * kernel_size
        self.weight = self.add_parameter(
            "weight", Parameter(uniform_init(rng, (filters, in_channels, kernel_size), fan_in))
        )
        self.bias = self.add_parameter("bias", Parameter(uniform_init(rng, (filters,), fan_in)))
        self._windows: Array | None = None
        self._input_shape: tuple[int, ...] = ()

    def output_length(self, length: int) -> int:
        if length < self.kernel_size:
            raise ShapeError(
                f"Conv1d input length {length} is shorter than kernel {self.kernel_size}"
            )
        return length - self.kernel_size + 1

    def forward(self, x: Array) -> Array:
        _require_ndim(x, 3, "Conv1d")
        if x.shape[1] != self.in_channels:
            raise ShapeError(f"Conv1d expects {self.in_channels} channels, got {x.shape[1]}")
        self.output_length(x.shape[2])
        # (batch, channels, positions, kernel)
        windows = sliding_window_view(x, self.kernel_size, axis=2)
        self._windows = windows
        self._input_shape = x.shape
        out = np.einsum("nclk,fck->nfl", windows, self.weight.value)
        return out + self.bias.value[None, :, None]

    def backward(self, grad: Array) -> Array:
        windows = _cached(self._windows, "Conv1d")
        self.weight.grad += np.einsum("nfl,nclk->fck", grad, windows)
        self.bias.grad += grad.sum(axis=(0, 2))
        dx = np.zeros(self._input_shape)
        out_length = grad.shape[2]
        for j in range(self.kernel_size):
            dx[:, :, j : j + out_length] += np.einsum(
                "nfl,fc->ncl", grad, self.weight.value[:, :, j]
            )
        return dx


class BatchNorm1d(Module):
    """Per-channel normalization over batch and length.

    Training mode uses the batch statistics (population variance) and
    updates running statistics with momentum 0.1; the running variance
    takes the unbiased estimate. Evaluation mode uses the running
    statistics, which start at mean 0 and variance 1.
    """

    def __init__(self, channels: int) -> None:
        super().__init__()
        self.channels = channels
        self.gamma = self.add_parameter("gamma", Parameter(np.ones(channels)))
        self.beta = self.add_parameter("beta", Parameter(np.zeros(channels)))
        self.running_mean = self.add_parameter(
            "running_mean", Parameter(np.zeros(channels), trainable=False)
        )
        self.running_var = self.add_parameter(
            "running_var", Parameter(np.ones(channels), trainable=False)
        )
        self._x_hat: Array | None = None
        self._inv_std: Array | None = None

    def forward(self, x: Array) -> Array:
        _require_ndim(x, 3, "BatchNorm1d")
        if x.shape[1] != self.channels:
            raise ShapeError(f"BatchNorm1d expects {self.channels} channels, got {x.shape[1]}")
        if self.training:
            count = x.shape[0] * x.shape[2]
            if count < 2:
                raise ShapeError("BatchNorm1d needs at least 2 values per channel in training")
            mean = x.mean(axis=(0, 2))
            var = x.var(axis=(0, 2))
            self.running_mean.value[:] = (
                1 - BN_MOMENTUM
            ) * self.running_mean.value + BN_MOMENTUM * mean
            self.running_var.value[:] = (1 - BN_MOMENTUM) * self.running_var.value + (
                BN_MOMENTUM * var * count / (count - 1)
            )
        else:
            mean = self.running_mean.value
            var = self.running_var.value
        inv_std = 1.0 / np.sqrt(var + BN_EPSILON)
        x_hat = (x - mean[None, :, None]) * inv_std[None, :, None]
        self._x_hat = x_hat
        self._inv_std = inv_std
        return self.gamma.value[None, :, None] * x_hat + self.beta.value[None, :, None]

    def backward(self, grad: Array) -> Array:
        x_hat = _cached(self._x_hat, "BatchNorm1d")
        inv_std = _cached(self._inv_std, "BatchNorm1d")[None, :, None]
        self.gamma.grad += (grad * x_hat).sum(axis=(0, 2))
        self.beta.grad += grad.sum(axis=(0, 2))
        d_x_hat = grad * self.gamma.value[None, :, None]
        if not self.training:
            return d_x_hat * inv_std
        count = grad.shape[0] * grad.shape[2]
        sum_d = d_x_hat.sum(axis=(0, 2), keepdims=True)
        sum_d_x_hat = (d_x_hat * x_hat).sum(axis=(0, 2), keepdims=True)
        return inv_std / count * (count * d_x_hat - sum_d - x_hat * sum_d_x_hat)


class ReLU(Module):
    def __init__(self) -> None:
        super().__init__()
        self._mask: NDArray[np.bool_] | None = None

    def forward(self, x: Array) -> Array:
        self._mask = x > 0
        return np.where(self._mask, x, 0.0)

    def backward(self, grad: Array) -> Array:
        if self._mask is None:
            raise ContractViolation("ReLU.backward called before forward")
        return np.where(self._mask, grad, 0.0)


class MaxPool1d(Module):
    """Non-overlapping max over windows of 3; the trailing remainder is dropped.

    On ties the gradient goes to the first maximal position.
    """

    def __init__(self, window: int = POOL_WINDOW) -> None:
        super().__init__()
        self.window = window
        self._argmax: NDArray[np.intp] | None = None
        self._input_shape: tuple[int, ...] = ()

    def output_length(self, length: int) -> int:
        if length < self.window:
            raise ShapeError(f"MaxPool1d input length {length} is shorter than {self.window}")
        return length // self.window

    def forward(self, x: Array) -> Array:
        _require_ndim(x, 3, "MaxPool1d")
        out_length = self.output_length(x.shape[2])
        batch, channels, _ = x.shape
        windows = x[:, :, : out_length * self.window].reshape(
            batch, channels, out_length, self.window
        )
        argmax = windows.argmax(axis=-1)
        self._argmax = argmax
        self._input_shape = x.shape
        return np.take_along_axis(windows, argmax[..., None], axis=-1)[..., 0]

    def backward(self, grad: Array) -> Array:
        if self._argmax is None:
            raise ContractViolation("MaxPool1d.backward called before forward")
        batch, channels, length = self._input_shape
        out_length = grad.shape[2]
        d_windows = np.zeros((batch, channels, out_length, self.window))
        np.put_along_axis(d_windows, self._argmax[..., None], grad[..., None], axis=-1)
        dx = np.zeros(self._input_shape)
        dx[:, :, : out_length * self.window] = d_windows.reshape(batch, channels, -1)
        return dx


class _LSTMDirection(Module):
    """One unrolled LSTM pass returning the final hidden state.

    Gate order in the stacked weights is input, forget, candidate, output.
    """

    def __init__(self, input_size: int, hidden: int, rng: np.random.Generator) -> None:
        super().__init__()
        self.hidden = hidden
        self.weight_input = self.add_parameter(
            "weight_input", Parameter(uniform_init(rng, (input_size, 4 * hidden), hidden))
        )
        self.weight_hidden = self.add_parameter(
            "weight_hidden", Parameter(uniform_init(rng, (hidden, 4 * hidden), hidden))
        )
        self.bias = self.add_parameter("bias", Parameter(uniform_init(rng, (4 * hidden,), hidden)))
        self._steps: list[dict[str, Array]] = []
        self._input_shape: tuple[int, ...] = ()

    def forward(self, x: Array) -> Array:
        batch, steps, _ = x.shape
        H = self.hidden
        h = np.zeros((batch, H))
        c = np.zeros((batch, H))
        cache: list[dict[str, Array]] = []
        for t in range(steps):
            z = x[:, t, :] @ self.weight_input.value + h @ self.weight_hidden.value
            z += self.bias.value
            i = sigmoid(z[:, :H])
            f = sigmoid(z[:, H : 2 * H])
            g = np.tanh(z[:, 2 * H : 3 * H])
            o = sigmoid(z[:, 3 * H :])
            c_next = f * c + i * g
            tanh_c = np.tanh(c_next)
            cache.append(
                {
                    "x": x[:, t, :],
                    "h_prev": h,
                    "c_prev": c,
                    "i": i,
                    "f": f,
                    "g": g,
                    "o": o,
                    "tanh_c": tanh_c,
                }
            )
            h = o * tanh_c
            c = c_next
        self._steps = cache
        self._input_shape = x.shape
        return h

    def backward(self, grad: Array) -> Array:
        if not self._steps:
            raise ContractViolation("LSTM.backward called before forward")
        dx = np.zeros(self._input_shape)
        dh = grad
        dc = np.zeros_like(grad)
        for t in range(len(self._steps) - 1, -1, -1):
            s = self._steps[t]
            do = dh * s["tanh_c"]
            dc = dc + dh * s["o"] * (1.0 - s["tanh_c"] ** 2)
            di = dc * s["g"]
            dg = dc * s["i"]
            df = dc * s["c_prev"]
            dz = np.concatenate(
                (
                    di * s["i"] * (1.0 - s["i"]),
                    df * s["f"] * (1.0 - s["f"]),
                    dg * (1.0 - s["g"] ** 2),
                    do * s["o"] * (1.0 - s["o"]),
                ),
                axis=1,
            )
            self.weight_input.grad += s["x"].T @ dz
            self.weight_hidden.grad += s["h_prev"].T @ dz
            self.bias.grad += dz.sum(axis=0)
            dx[:, t, :] = dz @ self.weight_input.value.T
            dh = dz @ self.weight_hidden.value.T
            dc = dc * s["f"]
        return dx


class LSTM(Module):
    """(Bi)LSTM over ``(batch, time, features)`` returning final hidden states.

    The bidirectional output concatenates the forward state at the last
    step with the backward state at the first step.
    """

    def __init__(
        self,
        input_size: int,
        hidden: int,
        rng: np.random.Generator,
        bidirectional: bool = True,
    ) -> None:
        super().__init__()
        self.input_size = input_size
        self.hidden = hidden
        self.bidirectional = bidirectional
        self.forward_pass = _LSTMDirection(input_size, hidden, rng)
        self.add_module("forward", self.forward_pass)
        self.backward_pass: _LSTMDirection | None = None
        if bidirectional:
            self.backward_pass = _LSTMDirection(input_size, hidden, rng)
            self.add_module("backward", self.backward_pass)

    @property
    def output_width(self) -> int:
        return self.hidden * (2 if self.bidirectional else 1)

    def forward(self, x: Array) -> Array:
        _require_ndim(x, 3, "LSTM")
        if x.shape[1] < 1:
            raise ShapeError("LSTM needs at least one timestep")
        if x.shape[2] != self.input_size:
            raise ShapeError(f"LSTM expects {self.input_size} features, got {x.shape[2]}")
        if not np.all(np.isfinite(x)):
            raise DataError("LSTM input contains non-finite values")
        h_forward = self.forward_pass.forward(x)
        if self.backward_pass is None:
            return h_forward
        h_backward = self.backward_pass.forward(x[:, ::-1, :])
        return np.concatenate((h_forward, h_backward), axis=1)

    def backward(self, grad: Array) -> Array:
        H = self.hidden
        dx = self.forward_pass.backward(grad[:, :H])
        if self.backward_pass is not None:
            dx = dx + self.backward_pass.backward(grad[:, H:])[:, ::-1, :]
        return dx


class Dense(Module):
    """Affine map ``x @ W + b`` followed by an activation."""

    def __init__(
        self,
        in_features: int,
        out_features: int,
        rng: np.random.Generator,
        activation: Activation = Activation.IDENTITY,
    ) -> None:
        super().__init__()
        self.in_features = in_features
        self.out_features = out_features
        self.activation = activation
        self.weight = self.add_parameter(
            "weight", Parameter(uniform_init(rng, (in_features, out_features), in_features))
        )
        self.bias = self.add_parameter(
            "bias", Parameter(uniform_init(rng, (out_features,), in_features))
        )
        self._x: Array | None = None
        self._out: Array | None = None

    def forward(self, x: Array) -> Array:
        _require_ndim(x, 2, "Dense")
        if x.shape[1] != self.in_features:
            raise ShapeError(f"Dense expects {self.in_features} features, got {x.shape[1]}")
        z = x @ self.weight.value + self.bias.value
        if self.activation is Activation.RELU:
            out = np.maximum(z, 0.0)
        elif self.activation is Activation.SIGMOID:
            out = sigmoid(z)
        else:
            out = z
        self._x = x
        self._out = out
        return out

    def backward(self, grad: Array) -> Array:
        x = _cached(self._x, "Dense")
        out = _cached(self._out, "Dense")
        if self.activation is Activation.RELU:
            dz = np.where(out > 0, grad, 0.0)
        elif self.activation is Activation.SIGMOID:
            dz = grad * out * (1.0 - out)
        else:
            dz = grad
        self.weight.grad += x.T @ dz
        self.bias.grad += dz.sum(axis=0)
        return dz @ self.weight.value.T


class Sequential(Module):
    """Layers applied in order."""

    def __init__(self, *layers: Module) -> None:
        super().__init__()
        self.layers = layers
        for index, layer in enumerate(layers):
            self.add_module(str(index), layer)

    def forward(self, x: Array) -> Array:
        for layer in self.layers:
            x = layer.forward(x)
        return x

    def backward(self, grad: Array) -> Array:
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad
