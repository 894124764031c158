"""Encode inputs use case - token-index matrices or aggregated embeddings."""

from dataclasses import dataclass
from pathlib import Path

from application.ports import ArtifactStore, DatasetSource
from domain.enums import ENCODER_AGGREGATION, EncoderKind
from domain.exceptions import ContractViolation, EmptyCorpusError
from domain.services import (
    aggregate_units,
    build_vocab,
    compute_padded_length,
    index_and_pad,
    tokenize_java,
)
from infrastructure.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class EncodeResult:
    """Summary of an encoding run."""

    encoder: EncoderKind
    samples: int
    width: int
    output: Path


class EncodeInputsUseCase:
    """Encode every available sample with one encoder and persist the result.

    Token indexing lexes ``<sources_dir>/<sample_id>.java`` files and fits
    vocabulary and padded length on all of them; embedding encoders fold
    unit rows into one vector per sample.
    """

    def __init__(self, source: DatasetSource, store: ArtifactStore) -> None:
        self.source = source
        self.store = store

    async def execute(
        self,
        encoder: EncoderKind,
        sources_dir: Path | None = None,
        embeddings: Path | None = None,
    ) -> EncodeResult:
        if encoder.uses_embeddings:
            if embeddings is None:
                raise ContractViolation(f"Encoder {encoder.value} needs an embedding file")
            return self._encode_embeddings(encoder, embeddings)
        if sources_dir is None:
            raise ContractViolation("The token-index encoder needs a sources directory")
        return self._encode_tokens(sources_dir)

    def _encode_tokens(self, sources_dir: Path) -> EncodeResult:
        sample_ids = self.source.list_sources(sources_dir)
        if not sample_ids:
            raise EmptyCorpusError(f"No .java sources in {sources_dir}")
        token_lists = [
            tokenize_java(self.source.load_source(sources_dir, sample_id))
            for sample_id in sample_ids
        ]
        vocab = build_vocab(token_lists)
        length = compute_padded_length([len(tokens) for tokens in token_lists])
        sequences = [
            index_and_pad(tokens, vocab, length, sample_id)
            for sample_id, tokens in zip(sample_ids, token_lists, strict=True)
        ]
        output = self.store.save_token_matrix(sequences, vocab)
        truncated = sum(1 for tokens in token_lists if len(tokens) > length)
        logger.info(
            "Sources encoded",
            samples=len(sequences),
            vocabulary=len(vocab),
            padded_length=length,
            truncated=truncated,
        )
        return EncodeResult(EncoderKind.TOKEN_INDEX, len(sequences), length, output)

    def _encode_embeddings(self, encoder: EncoderKind, path: Path) -> EncodeResult:
        units = self.source.load_embeddings(path)
        aggregation = ENCODER_AGGREGATION[encoder]
        table = aggregate_units(units, aggregation)
        output = self.store.save_embeddings(table)
        logger.info(
            "Embeddings encoded",
            encoder=encoder.value,
            aggregation=aggregation.value,
            units=len(units),
            samples=len(table),
            dim=table.dim,
        )
        return EncodeResult(encoder, len(table), table.dim, output)
