"""Central finite-difference verification of analytic gradients."""

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from domain.nn.loss import weighted_bce
from domain.nn.parameter import Module

STEP = 1e-5
ERROR_FLOOR = 1e-8

Array = NDArray[np.float64]
ModuleFactory = Callable[[np.random.Generator], tuple[Module, Array]]


@dataclass(frozen=True, slots=True)
class GradCheckResult:
    """Worst relative error of one check against its tolerance."""

    name: str
    max_relative_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_relative_error < self.tolerance


def relative_error(analytic: Array | float, numeric: Array | float) -> Array:
    """``|a - n| / max(|a|, |n|, 1e-8)`` elementwise."""
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    scale = np.maximum(np.maximum(np.abs(a), np.abs(n)), ERROR_FLOOR)
    return np.asarray(np.abs(a - n) / scale)


def _coordinates(
    size: int, max_coords: int | None, rng: np.random.Generator
) -> NDArray[np.intp]:
    if max_coords is None or size <= max_coords:
        return np.arange(size)
    return np.sort(rng.choice(size, size=max_coords, replace=False))


def compare_gradients(
    objective: Callable[[], float],
    targets: Mapping[str, tuple[Array, Array]],
    rng: np.random.Generator,
    h: float = STEP,
    max_coords: int | None = None,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    Args:
        objective: Scalar function re-evaluated after each perturbation
        targets: name -> (array perturbed in place, its analytic gradient)
        rng: Generator choosing coordinates when ``max_coords`` subsamples
        h: Finite-difference step
        max_coords: Check at most this many coordinates per array

    Returns:
        The largest relative error over every checked coordinate.
    """
    worst = 0.0
    for array, analytic in targets.values():
        for flat_index in _coordinates(array.size, max_coords, rng):
            index = np.unravel_index(flat_index, array.shape)
            original = array[index]
            array[index] = original + h
            plus = objective()
            array[index] = original - h
            minus = objective()
            array[index] = original
            numeric = (plus - minus) / (2 * h)
            worst = max(worst, float(relative_error(analytic[index], numeric)))
    return worst


def check_module(
    module: Module,
    x: Array,
    rng: np.random.Generator,
    h: float = STEP,
    max_coords: int | None = None,
) -> float:
    """Check input and parameter gradients of ``module`` in training mode.

    The objective is ``sum(r * module(x))`` for a fixed random ``r``.
    """
    module.train()
    out = module.forward(x)
    upstream = rng.standard_normal(out.shape)
    module.zero_grad()
    dx = module.backward(upstream)

    targets = {"input": (x, dx.copy())}
    for name, parameter in module.trainable_parameters():
        targets[name] = (parameter.value, parameter.grad.copy())

    def objective() -> float:
        return float(np.sum(upstream * module.forward(x)))

    return compare_gradients(objective, targets, rng, h, max_coords)


def grad_check(
    build: ModuleFactory,
    seeds: Iterable[int],
    h: float = STEP,
    max_coords: int | None = None,
) -> float:
    """Max relative error of a module family over several seeds.

    ``build`` receives a seeded generator and returns a fresh module and input.
    """
    worst = 0.0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        module, x = build(rng)
        worst = max(worst, check_module(module, x, rng, h, max_coords))
    return worst


def check_weighted_bce(seeds: Iterable[int], batch: int = 8, h: float = STEP) -> float:
    """Gradient of the weighted loss w.r.t. probabilities, over several seeds."""
    worst = 0.0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        pred = rng.uniform(0.05, 0.95, size=batch)
        target = (rng.random(batch) < 0.5).astype(np.float64)
        beta = float(rng.uniform(0.5, 10.0))
        _, grad = weighted_bce(pred, target, beta)

        def objective(pred: Array = pred, target: Array = target, beta: float = beta) -> float:
            return weighted_bce(pred, target, beta)[0]

        worst = max(worst, compare_gradients(objective, {"pred": (pred, grad)}, rng, h))
    return worst
