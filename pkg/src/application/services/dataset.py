"""Raw, unfitted experiment inputs for one smell."""

from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from pathlib import Path

from domain.entities import EmbeddingTable, LabeledCorpus, RawMetricTable
from domain.enums import Ablation, EncoderKind, MetricLevel, Smell
from domain.exceptions import ContractViolation


@dataclass(frozen=True, slots=True)
class DatasetRequest:
    """Where the inputs of a run live and which of them the run needs."""

    smell: Smell
    reviews: Path
    encoder: EncoderKind = EncoderKind.TOKEN_INDEX
    ablation: Ablation = Ablation.FULL
    level: MetricLevel = MetricLevel.CLASS
    ck_csv: Path | None = None
    embeddings: Path | None = None
    sources_dir: Path | None = None


@dataclass(frozen=True, slots=True)
class RawDataset:
    """Labeled corpus plus the per-sample inputs of the enabled branches.

    Metric rows and semantic inputs are keyed by sample id; ``subset``
    narrows the corpus only, lookups stay keyed.

    Attributes:
        corpus: Labels in lexicographic sample order
        encoder: How semantic inputs were produced
        metrics: Raw CK rows for every corpus sample (structural branch)
        tokens: Lexed Java tokens per sample (token-index encoder)
        embeddings: One aggregated vector per sample (embedding encoders)
    """

    corpus: LabeledCorpus
    encoder: EncoderKind
    metrics: RawMetricTable | None = None
    tokens: dict[str, list[str]] | None = field(default=None, repr=False)
    embeddings: EmbeddingTable | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.metrics is None and self.tokens is None and self.embeddings is None:
            raise ContractViolation("A dataset needs metric rows or semantic inputs")

    def __len__(self) -> int:
        return len(self.corpus)

    def subset(self, indices: Sequence[int]) -> "RawDataset":
        return replace(self, corpus=self.corpus.subset(list(indices)))

    def with_corpus(self, corpus: LabeledCorpus) -> "RawDataset":
        """Same inputs restricted to the samples of ``corpus``."""
        return replace(self, corpus=corpus)
