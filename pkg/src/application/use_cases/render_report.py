"""Render report use case - compare stored fold reports across runs."""

from collections.abc import Sequence

from application.ports import ArtifactStore
from application.services import render_report
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class RenderReportUseCase:
    """Read the reports written by train/cv runs and render one comparison table."""

    def __init__(self, output: ArtifactStore) -> None:
        self.output = output

    async def execute(
        self, runs: Sequence[ArtifactStore], labels: Sequence[str] | None = None
    ) -> str:
        reports = [run.load_report() for run in runs]
        table, rows = render_report(reports, labels)
        self.output.save_comparison(table, rows)
        logger.info("Report rendered", runs=len(reports), output=str(self.output.location))
        return table
