"""Fold-internal fitting of every preprocessing state."""

from dataclasses import dataclass
from typing import Any

import numpy as np

from application.services.dataset import RawDataset
from domain.entities import Vocab
from domain.enums import Ablation, EncoderKind
from domain.exceptions import ContractViolation
from domain.model import TrainingData
from domain.services import (
    MetricPipeline,
    MetricPipelineState,
    build_vocab,
    compute_padded_length,
    index_and_pad,
)
from domain.services.metric_preprocessing import DEFAULT_NEIGHBORS, DEFAULT_SPARSITY_THRESHOLD


@dataclass(frozen=True, slots=True)
class FittedFeatures:
    """States fitted on one training portion and reused on its test portion.

    Attributes:
        metric_state: Fitted metric pipeline (structural branch)
        vocab: Token vocabulary (token-index encoder)
        input_length: Padded token length or embedding width (semantic branch)
    """

    encoder: EncoderKind
    metric_state: MetricPipelineState | None = None
    vocab: Vocab | None = None
    input_length: int = 0

    @property
    def n_metrics(self) -> int:
        return len(self.metric_state.feature_names) if self.metric_state else 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "encoder": self.encoder.value,
            "metric_pipeline": self.metric_state.to_dict() if self.metric_state else None,
            "vocab": dict(self.vocab.token_to_id) if self.vocab else None,
            "input_length": self.input_length,
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "FittedFeatures":
        state = payload.get("metric_pipeline")
        vocab = payload.get("vocab")
        return cls(
            encoder=EncoderKind(payload["encoder"]),
            metric_state=MetricPipelineState.from_dict(state) if state else None,
            vocab=Vocab(token_to_id=dict(vocab)) if vocab is not None else None,
            input_length=payload["input_length"],
        )


class FeatureBuilder:
    """Fits preprocessing on a training portion, then encodes any portion with it.

    Nothing computed from a test portion ever reaches a fitted state.

    Usage:
        builder = FeatureBuilder(Ablation.FULL)
        fitted = builder.fit(train_part)
        train_inputs = builder.transform(fitted, train_part)
        test_inputs = builder.transform(fitted, test_part)
    """

    def __init__(
        self,
        ablation: Ablation = Ablation.FULL,
        n_neighbors: int = DEFAULT_NEIGHBORS,
        sparsity_threshold: float = DEFAULT_SPARSITY_THRESHOLD,
    ) -> None:
        self.ablation = ablation
        self.n_neighbors = n_neighbors
        self.sparsity_threshold = sparsity_threshold

    def fit(self, train: RawDataset) -> FittedFeatures:
        """Fit metric pipeline, vocabulary and padded length on ``train`` only.

        Raises:
            ContractViolation: if an enabled branch has no inputs
        """
        ids = train.corpus.sample_ids
        metric_state = None
        if self.ablation.uses_structural:
            if train.metrics is None:
                raise ContractViolation("The structural branch needs metric rows")
            metric_state = MetricPipeline.fit(
                train.metrics.select_rows(ids), self.n_neighbors, self.sparsity_threshold
            )

        vocab = None
        input_length = 0
        if self.ablation.uses_semantic:
            if train.tokens is not None:
                token_lists = [train.tokens[i] for i in ids]
                vocab = build_vocab(token_lists)
                input_length = compute_padded_length([len(t) for t in token_lists])
            elif train.embeddings is not None:
                input_length = train.embeddings.dim
            else:
                raise ContractViolation("The semantic branch needs tokens or embeddings")

        return FittedFeatures(
            encoder=train.encoder,
            metric_state=metric_state,
            vocab=vocab,
            input_length=input_length,
        )

    def transform(self, fitted: FittedFeatures, data: RawDataset) -> TrainingData:
        """Encode ``data`` with states fitted elsewhere."""
        ids = data.corpus.sample_ids
        structural = None
        if fitted.metric_state is not None and data.metrics is not None:
            structural = MetricPipeline.transform(
                fitted.metric_state, data.metrics.select_rows(ids)
            ).values

        semantic = None
        if self.ablation.uses_semantic:
            if fitted.vocab is not None and data.tokens is not None:
                semantic = np.stack(
                    [
                        index_and_pad(data.tokens[i], fitted.vocab, fitted.input_length, i).indices
                        for i in ids
                    ]
                ).astype(np.float64)
            elif data.embeddings is not None:
                semantic = data.embeddings.matrix(ids)

        return TrainingData(
            semantic=semantic,
            structural=structural,
            labels=np.asarray(data.corpus.labels, dtype=np.int64),
        )
