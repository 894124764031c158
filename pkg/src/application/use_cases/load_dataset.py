"""Load dataset use case - gather labels and the inputs of every enabled branch."""

from application.ports import DatasetSource
from application.services import DatasetRequest, RawDataset
from domain.entities import EmbeddingTable, LabeledCorpus
from domain.enums import ENCODER_AGGREGATION
from domain.exceptions import ContractViolation, LexError
from domain.services import aggregate_units, build_corpus, tokenize_java
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class LoadDatasetUseCase:
    """Build the labeled corpus and attach metric rows and semantic inputs.

    Every corpus sample must have a metric row (structural branch) and a
    source file or embedding (semantic branch); a gap is a data error.
    """

    def __init__(self, source: DatasetSource) -> None:
        self.source = source

    async def execute(self, request: DatasetRequest) -> RawDataset:
        corpus = build_corpus(self.source.load_reviews(request.reviews), request.smell)
        logger.info(
            "Corpus loaded",
            smell=request.smell.value,
            negatives=corpus.n_negative,
            positives=corpus.n_positive,
            ties=corpus.dropped_ties,
        )
        ids = corpus.sample_ids

        metrics = None
        if request.ablation.uses_structural:
            if request.ck_csv is None:
                raise ContractViolation("The structural branch needs a CK metric export")
            table = self.source.load_metric_table(request.ck_csv, request.level)
            metrics = table.select_rows(ids)

        tokens = None
        embeddings = None
        if request.ablation.uses_semantic:
            if request.encoder.uses_embeddings:
                embeddings = self._load_embeddings(request, corpus)
            else:
                tokens = self._load_tokens(request, corpus)

        return RawDataset(
            corpus=corpus,
            encoder=request.encoder,
            metrics=metrics,
            tokens=tokens,
            embeddings=embeddings,
        )

    def _load_embeddings(self, request: DatasetRequest, corpus: LabeledCorpus) -> EmbeddingTable:
        if request.embeddings is None:
            raise ContractViolation(f"Encoder {request.encoder.value} needs an embedding file")
        units = self.source.load_embeddings(request.embeddings)
        aggregation = ENCODER_AGGREGATION[request.encoder]
        per_sample = aggregate_units(units, aggregation)
        ids = corpus.sample_ids
        matrix = per_sample.matrix(ids)
        logger.info(
            "Embeddings aggregated",
            encoder=request.encoder.value,
            aggregation=aggregation.value,
            units=len(units),
            samples=len(ids),
            dim=per_sample.dim,
        )
        return EmbeddingTable(dim=per_sample.dim, rows=dict(zip(ids, matrix, strict=True)))

    def _load_tokens(self, request: DatasetRequest, corpus: LabeledCorpus) -> dict[str, list[str]]:
        if request.sources_dir is None:
            raise ContractViolation("The token-index encoder needs a sources directory")
        tokens: dict[str, list[str]] = {}
        for sample_id in corpus.sample_ids:
            text = self.source.load_source(request.sources_dir, sample_id)
            try:
                tokens[sample_id] = tokenize_java(text)
            except LexError as e:
                raise LexError(f"{sample_id}: {e.message}", e.offset, e.line, e.column) from e
        lengths = [len(t) for t in tokens.values()]
        logger.info(
            "Sources tokenized",
            samples=len(tokens),
            shortest=min(lengths),
            longest=max(lengths),
        )
        return tokens
