"""Application ports - Abstract interfaces for infrastructure adapters."""

from application.ports.artifact_store import ArtifactStore
from application.ports.dataset_source import DatasetSource

__all__ = ["DatasetSource", "ArtifactStore"]
