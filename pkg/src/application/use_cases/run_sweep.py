"""Sweep use case - one run per (kernel size, beta) grid point."""

import asyncio
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any

from application.ports import ArtifactStore
from application.services import ConcurrentRunner, FeatureBuilder, RawDataset
from application.use_cases.cross_validate import CrossValidateUseCase
from application.use_cases.train_model import TrainModelUseCase
from domain.enums import Protocol
from domain.value_objects import FoldReport, ModelConfig
from infrastructure.logging import get_logger

logger = get_logger(__name__)


def point_name(kernel_size: int, beta: float) -> str:
    """Directory name of a grid point, e.g. ``k5_beta8``."""
    return f"k{kernel_size}_beta{beta:g}"


@dataclass(frozen=True, slots=True)
class SweepPoint:
    """Outcome of one grid point; ``report`` is None when the run failed."""

    name: str
    kernel_size: int
    beta: float
    report: FoldReport | None = None
    error: str | None = None
    cause: Exception | None = field(default=None, repr=False, compare=False)


@dataclass(frozen=True, slots=True)
class SweepResult:
    points: tuple[SweepPoint, ...]

    @property
    def failed(self) -> list[SweepPoint]:
        return [point for point in self.points if point.report is None]


class RunSweepUseCase:
    """Run every grid point under one protocol, each in its own run directory.

    Grid points run concurrently; folds of all points share one bounded
    runner, so at most ``runner.max_workers`` models train at once. The
    sweep reports every point and never picks a winner.
    """

    def __init__(self, store: ArtifactStore, runner: ConcurrentRunner) -> None:
        self.store = store
        self.runner = runner

    async def execute(
        self,
        dataset: RawDataset,
        base: ModelConfig,
        builder: FeatureBuilder,
        kernel_grid: Sequence[int],
        beta_grid: Sequence[float],
        protocol: Protocol = Protocol.CV5,
        folds: int = 5,
        test_fraction: float = 0.2,
        run_config: dict[str, Any] | None = None,
    ) -> SweepResult:
        grid = [(k, float(beta)) for k in kernel_grid for beta in beta_grid]
        logger.info("Sweep started", points=len(grid), protocol=protocol.value)

        async def run_point(kernel_size: int, beta: float) -> SweepPoint:
            name = point_name(kernel_size, beta)
            config = replace(base, kernel_size=kernel_size, beta=beta)
            store = self.store.child(name)
            store.save_config(
                {**(run_config or {}), "kernel_size": kernel_size, "beta": beta, "name": name}
            )
            if protocol is Protocol.SPLIT_80_20:
                result = await TrainModelUseCase(store, self.runner).execute(
                    dataset, config, builder, test_fraction, name
                )
                return SweepPoint(name, kernel_size, beta, report=result.report)
            report = await CrossValidateUseCase(store, self.runner).execute(
                dataset, config, builder, folds, name
            )
            return SweepPoint(name, kernel_size, beta, report=report)

        results = await asyncio.gather(
            *(run_point(k, beta) for k, beta in grid), return_exceptions=True
        )
        points: list[SweepPoint] = []
        for (k, beta), result in zip(grid, results, strict=True):
            if isinstance(result, SweepPoint):
                points.append(result)
                continue
            if not isinstance(result, Exception):
                raise result
            logger.warning("Sweep point failed", point=point_name(k, beta), error=str(result))
            points.append(
                SweepPoint(
                    point_name(k, beta),
                    k,
                    beta,
                    error=f"{type(result).__name__}: {result}",
                    cause=result,
                )
            )

        sweep = SweepResult(points=tuple(points))
        logger.info("Sweep finished", points=len(points), failed=len(sweep.failed))
        return sweep
