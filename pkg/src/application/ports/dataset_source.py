"""Dataset source port - Abstract interface for reading experiment inputs."""

from abc import ABC, abstractmethod
from pathlib import Path

from domain.entities import EmbeddingTable, RawMetricTable, ReviewRecord
from domain.enums import MetricLevel


class DatasetSource(ABC):
    """Port for reading reviews, metric tables, embeddings and source code.

    Infrastructure adapters (CSV files, archives, etc.) implement this
    interface to hand domain entities to application use cases.
    """

    @abstractmethod
    def load_reviews(self, path: Path) -> list[ReviewRecord]:
        """Read a review export.

        Args:
            path: Location of the export

        Returns:
            One record per (sample, smell, reviewer) verdict

        Raises:
            PathError: if the export does not exist
            SchemaError: if a required column is missing
            ParseError: if a row cannot be decoded
        """
        ...

    @abstractmethod
    def load_metric_table(self, path: Path, level: MetricLevel) -> RawMetricTable:
        """Read a CK metric export at class or method level.

        Args:
            path: Location of the export
            level: Which metric list to recognise

        Returns:
            Raw table keyed by sample id, missing cells as NaN/None
        """
        ...

    @abstractmethod
    def load_embeddings(self, path: Path) -> EmbeddingTable:
        """Read precomputed unit embeddings (one row per unit id).

        Raises:
            FormatError: on ragged rows, duplicate ids or non-UTF-8 bytes
            DataError: on non-finite values
        """
        ...

    @abstractmethod
    def list_sources(self, sources_dir: Path) -> list[str]:
        """Sample ids that have a source file, sorted.

        Raises:
            PathError: if ``sources_dir`` is not a directory
        """
        ...

    @abstractmethod
    def load_source(self, sources_dir: Path, sample_id: str) -> str:
        """Read the Java source of one sample.

        Raises:
            PathError: if the sample has no source file
            FormatError: if the file is not UTF-8 text
        """
        ...
