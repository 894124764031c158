"""Domain entities - Corpora, metric tables and semantic inputs."""

from domain.entities.corpus import LabeledCorpus, LabeledSample, ReviewRecord
from domain.entities.encoding import PADDING_ID, EmbeddingTable, TokenSequence, Vocab
from domain.entities.metric_table import MetricColumn, MetricMatrix, RawMetricTable

__all__ = [
    "ReviewRecord",
    "LabeledSample",
    "LabeledCorpus",
    "MetricColumn",
    "RawMetricTable",
    "MetricMatrix",
    "TokenSequence",
    "Vocab",
    "EmbeddingTable",
    "PADDING_ID",
]
