"""Artifact store port - Abstract interface for persisting run outputs."""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from domain.entities import EmbeddingTable, LabeledCorpus, MetricMatrix, TokenSequence, Vocab
from domain.model import EnsembleModel
from domain.services import MetricPipelineState
from domain.value_objects import FoldReport, PredictionRecord, TrainingHistory


class ArtifactStore(ABC):
    """Port for writing and reading the files of one run directory.

    Every write must be atomic so that an interrupted command never leaves
    a half-written artifact behind.
    """

    @property
    @abstractmethod
    def location(self) -> Path:
        """Directory the store writes into."""
        ...

    @abstractmethod
    def child(self, name: str) -> "ArtifactStore":
        """Store for a sub-run (e.g. one sweep grid point)."""
        ...

    @abstractmethod
    def save_config(self, config: dict[str, Any]) -> Path:
        """Persist the resolved run configuration, seed included."""
        ...

    @abstractmethod
    def save_corpus(self, corpus: LabeledCorpus) -> Path:
        """Persist a labeled corpus and its class counts.

        Returns:
            Path of the corpus file
        """
        ...

    @abstractmethod
    def save_metric_matrix(self, matrix: MetricMatrix, state: MetricPipelineState) -> Path:
        """Persist a preprocessed metric matrix with its fitted state sidecar."""
        ...

    @abstractmethod
    def save_token_matrix(self, sequences: Sequence[TokenSequence], vocab: Vocab) -> Path:
        """Persist padded token rows with their vocabulary."""
        ...

    @abstractmethod
    def save_embeddings(self, table: EmbeddingTable) -> Path:
        """Persist per-sample aggregated embeddings."""
        ...

    @abstractmethod
    def save_checkpoint(self, model: EnsembleModel) -> Path:
        """Persist a trained model with its preprocessing states."""
        ...

    @abstractmethod
    def load_checkpoint(self, expected_fingerprint: str | None = None) -> EnsembleModel:
        """Read the checkpoint back.

        Raises:
            VersioningError: if the checkpoint is unreadable or the hash mismatches
            CheckpointError: if a tensor is missing
        """
        ...

    @abstractmethod
    def save_history(self, history: TrainingHistory, name: str = "history") -> Path:
        """Persist per-epoch mean losses."""
        ...

    @abstractmethod
    def save_report(self, report: FoldReport) -> Path:
        """Persist a fold report (JSON plus per-fold CSV)."""
        ...

    @abstractmethod
    def load_report(self) -> FoldReport:
        """Read the fold report of this run.

        Raises:
            PathError: if the run has no report
        """
        ...

    @abstractmethod
    def save_predictions(self, predictions: Sequence[PredictionRecord]) -> Path:
        """Persist per-sample probabilities and labels."""
        ...

    @abstractmethod
    def load_predictions(self) -> list[PredictionRecord]:
        """Read stored predictions."""
        ...

    @abstractmethod
    def save_comparison(self, table: str, rows: Sequence[dict[str, str]]) -> Path:
        """Persist a rendered comparison table and its CSV twin."""
        ...
