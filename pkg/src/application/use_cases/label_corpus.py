"""Label corpus use case - reviews to a binary corpus for one smell."""

from pathlib import Path

from application.ports import ArtifactStore, DatasetSource
from domain.entities import LabeledCorpus
from domain.enums import Smell
from domain.services import build_corpus
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class LabelCorpusUseCase:
    """Majority-vote the reviews of one smell and persist the corpus.

    Usage:
        use_case = LabelCorpusUseCase(CsvDatasetSource(), RunDirectory(out))
        corpus = await use_case.execute(Path("mlcq.csv"), Smell.DATA_CLASS)
    """

    def __init__(self, source: DatasetSource, store: ArtifactStore) -> None:
        self.source = source
        self.store = store

    async def execute(self, reviews: Path, smell: Smell) -> LabeledCorpus:
        records = self.source.load_reviews(reviews)
        corpus = build_corpus(records, smell)
        if corpus.dropped_ties:
            logger.info("Dropped tied samples", smell=smell.value, count=corpus.dropped_ties)
        self.store.save_corpus(corpus)
        logger.info(
            "Corpus built",
            smell=smell.value,
            negatives=corpus.n_negative,
            positives=corpus.n_positive,
            ties=corpus.dropped_ties,
        )
        return corpus
