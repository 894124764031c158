"""Tests for layers, loss, optimizer and finite-difference gradient checks."""

import numpy as np
import pytest

from application.use_cases.run_gradcheck import LAYER_CASES, check_assembled_model
from domain.enums import Activation
from domain.exceptions import ConfigError, ContractViolation, DataError, NumericError, ShapeError
from domain.nn import (
    LSTM,
    SGD,
    BatchNorm1d,
    Conv1d,
    Dense,
    MaxPool1d,
    Parameter,
    Sequential,
    check_weighted_bce,
    grad_check,
    relative_error,
    sgd_step,
    sigmoid,
    weighted_bce,
)

SEEDS = (0, 1, 2, 3, 4)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


class TestConv1d:
    def test_valid_cross_correlation(self, rng: np.random.Generator) -> None:
        layer = Conv1d(1, 1, 3, rng)
        layer.weight.value[:] = np.array([[[1.0, 0.0, -1.0]]])
        layer.bias.value[:] = 0.5
        x = np.arange(6, dtype=np.float64).reshape(1, 1, 6)

        out = layer.forward(x)

        np.testing.assert_allclose(out, [[[-1.5, -1.5, -1.5, -1.5]]])

    def test_output_shape(self, rng: np.random.Generator) -> None:
        layer = Conv1d(2, 4, 5, rng)
        assert layer.forward(rng.standard_normal((3, 2, 12))).shape == (3, 4, 8)
        assert layer.weight.shape == (4, 2, 5)

    def test_input_shorter_than_kernel(self, rng: np.random.Generator) -> None:
        with pytest.raises(ShapeError):
            Conv1d(1, 1, 5, rng).forward(np.zeros((1, 1, 4)))

    def test_wrong_channel_count(self, rng: np.random.Generator) -> None:
        with pytest.raises(ShapeError):
            Conv1d(2, 1, 3, rng).forward(np.zeros((1, 1, 8)))


class TestMaxPool1d:
    def test_windows_of_three_drop_the_tail(self) -> None:
        pool = MaxPool1d()
        x = np.array([[[1.0, 3.0, 2.0, 5.0, 4.0, 0.0, 9.0]]])
        np.testing.assert_array_equal(pool.forward(x), [[[3.0, 5.0]]])

        dx = pool.backward(np.array([[[10.0, 20.0]]]))
        np.testing.assert_array_equal(dx, [[[0.0, 10.0, 0.0, 20.0, 0.0, 0.0, 0.0]]])

    def test_tie_routes_gradient_to_first_position(self) -> None:
        pool = MaxPool1d()
        pool.forward(np.array([[[2.0, 2.0, 1.0]]]))
        np.testing.assert_array_equal(pool.backward(np.array([[[1.0]]])), [[[1.0, 0.0, 0.0]]])

    def test_input_shorter_than_window(self) -> None:
        with pytest.raises(ShapeError):
            MaxPool1d().forward(np.zeros((1, 1, 2)))


class TestBatchNorm1d:
    def test_training_normalises_each_channel(self, rng: np.random.Generator) -> None:
        layer = BatchNorm1d(2)
        x = rng.normal(3.0, 2.0, size=(4, 2, 6))
        out = layer.forward(x)

        np.testing.assert_allclose(out.mean(axis=(0, 2)), 0.0, atol=1e-10)
        np.testing.assert_allclose(out.var(axis=(0, 2)), 1.0, atol=1e-3)

    def test_running_statistics(self, rng: np.random.Generator) -> None:
        layer = BatchNorm1d(1)
        x = rng.standard_normal((3, 1, 4))
        layer.forward(x)

        values = x.ravel()
        assert layer.running_mean.value[0] == pytest.approx(0.1 * values.mean())
        assert layer.running_var.value[0] == pytest.approx(0.9 + 0.1 * values.var(ddof=1))

    def test_evaluation_uses_running_statistics(self) -> None:
        layer = BatchNorm1d(1)
        layer.eval()
        x = np.full((2, 1, 3), 2.0)
        np.testing.assert_allclose(layer.forward(x), 2.0 / np.sqrt(1.0 + 1e-5))

    def test_single_value_per_channel_in_training(self) -> None:
        with pytest.raises(ShapeError):
            BatchNorm1d(1).forward(np.zeros((1, 1, 1)))

    def test_buffers_are_not_trainable(self) -> None:
        names = [name for name, _ in BatchNorm1d(2).trainable_parameters()]
        assert names == ["gamma", "beta"]


class TestLSTM:
    def test_bidirectional_output_width(self, rng: np.random.Generator) -> None:
        layer = LSTM(3, 4, rng, bidirectional=True)
        assert layer.forward(rng.standard_normal((2, 5, 3))).shape == (2, 8)
        assert layer.output_width == 8

    def test_parameter_layout(self, rng: np.random.Generator) -> None:
        shapes = {name: p.shape for name, p in LSTM(3, 4, rng).named_parameters()}
        assert shapes == {
            "forward.weight_input": (3, 16),
            "forward.weight_hidden": (4, 16),
            "forward.bias": (16,),
            "backward.weight_input": (3, 16),
            "backward.weight_hidden": (4, 16),
            "backward.bias": (16,),
        }

    def test_non_finite_input(self, rng: np.random.Generator) -> None:
        x = np.zeros((1, 2, 3))
        x[0, 1, 2] = np.nan
        with pytest.raises(DataError):
            LSTM(3, 2, rng).forward(x)

    def test_feature_mismatch(self, rng: np.random.Generator) -> None:
        with pytest.raises(ShapeError):
            LSTM(3, 2, rng).forward(np.zeros((1, 2, 4)))


class TestDenseAndSequential:
    def test_sigmoid_output_is_a_probability(self, rng: np.random.Generator) -> None:
        out = Dense(4, 1, rng, Activation.SIGMOID).forward(rng.standard_normal((5, 4)) * 50)
        assert np.all((out >= 0.0) & (out <= 1.0))

    def test_sigmoid_is_stable(self) -> None:
        np.testing.assert_allclose(sigmoid(np.array([-800.0, 0.0, 800.0])), [0.0, 0.5, 1.0])

    def test_children_are_named_by_position(self, rng: np.random.Generator) -> None:
        model = Sequential(Dense(2, 3, rng), Dense(3, 1, rng))
        names = [name for name, _ in model.named_parameters()]
        assert names == ["0.weight", "0.bias", "1.weight", "1.bias"]

    def test_backward_before_forward(self, rng: np.random.Generator) -> None:
        with pytest.raises(ContractViolation):
            Dense(2, 1, rng).backward(np.zeros((1, 1)))


class TestWeightedBce:
    def test_value_and_gradient(self) -> None:
        pred = np.array([0.9, 0.2])
        target = np.array([1.0, 0.0])
        loss, grad = weighted_bce(pred, target, beta=2.0)

        assert loss == pytest.approx(-(2.0 * np.log(0.9) + np.log(0.8)) / 2)
        np.testing.assert_allclose(grad, [-(2.0 / 0.9) / 2, (1.0 / 0.8) / 2])

    def test_beta_one_is_plain_cross_entropy(self) -> None:
        pred = np.array([0.3, 0.6, 0.8])
        target = np.array([0, 1, 1])
        loss, _ = weighted_bce(pred, target, beta=1.0)
        expected = -np.mean(target * np.log(pred) + (1 - target) * np.log(1 - pred))
        assert loss == pytest.approx(expected)

    def test_beta_one_matches_cross_entropy_on_random_pairs(self) -> None:
        rng = np.random.default_rng(4)
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            pred = rng.uniform(0.01, 0.99, n)
            target = rng.integers(0, 2, n).astype(np.float64)
            loss, _ = weighted_bce(pred, target, beta=1.0)
            expected = -np.mean(target * np.log(pred) + (1 - target) * np.log(1 - pred))
            assert loss == pytest.approx(expected, abs=1e-12)

    def test_positive_term_scales_with_beta(self) -> None:
        pred = np.array([0.3, 0.8])
        target = np.array([1.0, 1.0])
        base, _ = weighted_bce(pred, target, beta=1.0)
        scaled, _ = weighted_bce(pred, target, beta=7.0)
        assert scaled == pytest.approx(7.0 * base, rel=1e-12)

    def test_clamped_probabilities_stay_finite(self) -> None:
        loss, grad = weighted_bce(np.array([0.0, 1.0]), np.array([1.0, 0.0]), beta=3.0)
        assert np.isfinite(loss)
        np.testing.assert_array_equal(grad, [0.0, 0.0])

    def test_beta_must_be_positive(self) -> None:
        with pytest.raises(ConfigError):
            weighted_bce(np.array([0.5]), np.array([1.0]), beta=0.0)

    def test_shape_mismatch(self) -> None:
        with pytest.raises(ShapeError):
            weighted_bce(np.array([0.5, 0.5]), np.array([1.0]), beta=1.0)

    def test_empty_batch(self) -> None:
        with pytest.raises(ContractViolation):
            weighted_bce(np.array([]), np.array([]), beta=1.0)

    def test_non_binary_target(self) -> None:
        with pytest.raises(ContractViolation):
            weighted_bce(np.array([0.5]), np.array([0.5]), beta=1.0)


class TestSgd:
    def test_step_then_zero(self) -> None:
        parameter = Parameter(np.array([1.0, 2.0]))
        parameter.grad[:] = [0.5, -1.0]
        sgd_step([("w", parameter)], 0.1)

        np.testing.assert_allclose(parameter.value, [0.95, 2.1])
        np.testing.assert_array_equal(parameter.grad, [0.0, 0.0])

    def test_non_finite_gradient_leaves_values_alone(self) -> None:
        good = Parameter(np.array([1.0]))
        bad = Parameter(np.array([1.0]))
        good.grad[:] = 1.0
        bad.grad[:] = np.inf
        with pytest.raises(NumericError, match="bad"):
            sgd_step([("good", good), ("bad", bad)], 0.1)
        assert good.value[0] == 1.0

    def test_learning_rate_must_be_positive(self) -> None:
        with pytest.raises(ContractViolation):
            sgd_step([], 0.0)

    def test_buffers_are_skipped(self) -> None:
        buffer = Parameter(np.array([3.0]), trainable=False)
        weight = Parameter(np.array([3.0]))
        optimizer = SGD([("buffer", buffer), ("weight", weight)], 1.0)
        weight.grad[:] = 1.0
        optimizer.step()

        assert [name for name, _ in optimizer.params] == ["weight"]
        assert buffer.value[0] == 3.0
        assert weight.value[0] == 2.0


class TestGradientChecks:
    def test_relative_error_floor(self) -> None:
        assert float(relative_error(0.0, 0.0)) == 0.0
        assert float(relative_error(1e-9, 0.0)) == pytest.approx(0.1)
        assert float(relative_error(2.0, 1.0)) == pytest.approx(0.5)

    @pytest.mark.parametrize("name", sorted(LAYER_CASES))
    def test_layer_gradients(self, name: str) -> None:
        assert grad_check(LAYER_CASES[name], SEEDS) < 1e-4

    def test_loss_gradient(self) -> None:
        assert check_weighted_bce(SEEDS) < 1e-4

    def test_assembled_model(self) -> None:
        assert check_assembled_model(SEEDS) < 1e-3
