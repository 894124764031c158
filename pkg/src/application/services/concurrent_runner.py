"""Bounded concurrency for CPU-bound jobs driven from asyncio.

Folds and sweep grid points are independent model instances; this runner
pushes each one into a shared thread pool so that at most ``max_workers``
train at once while the event loop only awaits.
"""

import asyncio
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, Generic, TypeVar

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True, slots=True)
class JobOutcome(Generic[R]):
    """Result or error of one job, in submission order."""

    index: int
    result: R | None = None
    error: BaseException | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


class ConcurrentRunner:
    """Runs sync callables in a bounded executor and gathers them in order.

    Usage:
        with ConcurrentRunner(max_workers=2) as runner:
            outcomes = await runner.map(train_fold, folds)
    """

    def __init__(self, max_workers: int = 2) -> None:
        """Initialize the runner.

        Args:
            max_workers: Jobs allowed to run at the same time
        """
        if max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {max_workers}")
        self.max_workers = max_workers
        self._executor = ThreadPoolExecutor(max_workers=max_workers)

    def __enter__(self) -> "ConcurrentRunner":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.shutdown()

    def shutdown(self) -> None:
        self._executor.shutdown(wait=True)

    async def run(self, fn: Callable[..., R], *args: Any) -> R:
        """Run one job in the pool and await its result."""
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self._executor, partial(fn, *args))

    async def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[JobOutcome[R]]:
        """Run ``fn`` over ``items`` concurrently.

        A failing job never cancels its siblings; its exception is returned
        in its ``JobOutcome`` instead.

        Returns:
            One outcome per item, in item order
        """
        results = await asyncio.gather(
            *(self.run(fn, item) for item in items), return_exceptions=True
        )
        outcomes: list[JobOutcome[R]] = []
        for index, result in enumerate(results):
            if isinstance(result, BaseException):
                if not isinstance(result, Exception):
                    raise result
                outcomes.append(JobOutcome(index=index, error=result))
            else:
                outcomes.append(JobOutcome(index=index, result=result))
        return outcomes
