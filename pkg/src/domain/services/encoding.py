"""Turn source tokens or unit embeddings into fixed-length semantic inputs."""

from collections import defaultdict
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from domain.entities import PADDING_ID, EmbeddingTable, TokenSequence, Vocab
from domain.enums import Aggregation
from domain.exceptions import ContractViolation, FormatError

UNIT_SEPARATOR = "#"


def build_vocab(token_lists: Sequence[Sequence[str]]) -> Vocab:
    """Assign ids 1, 2, ... to tokens in first-seen order over the training split.

    Raises:
        ContractViolation: if there is no training sample
    """
    if not token_lists:
        raise ContractViolation("Cannot build a vocabulary from an empty training corpus")
    vocab = Vocab()
    for tokens in token_lists:
        for token in tokens:
            vocab.add(token)
    return vocab


def compute_padded_length(lengths: Sequence[int]) -> int:
    """Longest length within one population standard deviation of the mean.

    Lengths outside ``[mean - std, mean + std]`` are ignored for this
    computation only. If every length is ignored, the overall maximum is used.

    Raises:
        ContractViolation: if fewer than two lengths are given
    """
    if len(lengths) < 2:
        raise ContractViolation("compute_padded_length needs at least two lengths")
    values = np.asarray(lengths, dtype=np.float64)
    mean = values.mean()
    std = values.std()
    retained = values[(values >= mean - std) & (values <= mean + std)]
    if retained.size == 0:
        return int(values.max())
    return int(retained.max())


def index_and_pad(
    tokens: Sequence[str],
    vocab: Vocab,
    max_length: int,
    sample_id: str = "",
) -> TokenSequence:
    """Map tokens to ids, truncate the tail beyond ``max_length``, right-pad with 0.

    Raises:
        ContractViolation: if ``max_length`` < 1
    """
    if max_length < 1:
        raise ContractViolation(f"max_length must be at least 1, got {max_length}")
    ids = [vocab.lookup(token) for token in tokens[:max_length]]
    indices = np.full(max_length, PADDING_ID, dtype=np.int64)
    indices[: len(ids)] = ids
    return TokenSequence(sample_id=sample_id, indices=indices, true_length=len(ids))


def _stack(unit_vectors: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
    if len(unit_vectors) == 0:
        raise ContractViolation("Cannot aggregate an empty list of vectors")
    dims = {np.shape(v) for v in unit_vectors}
    if len(dims) != 1:
        raise ContractViolation(f"Vectors have differing shapes {sorted(dims)}")
    return np.stack([np.asarray(v, dtype=np.float64) for v in unit_vectors])


def aggregate_sum(unit_vectors: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
    """Elementwise sum (line vectors -> method, method vectors -> class)."""
    return _stack(unit_vectors).sum(axis=0)


def aggregate_mean(unit_vectors: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
    """Elementwise arithmetic mean of unit vectors."""
    return _stack(unit_vectors).mean(axis=0)


def sample_key(unit_id: str) -> str:
    """Sample id of a unit row: the part before the first ``#``."""
    return unit_id.split(UNIT_SEPARATOR, 1)[0]


def aggregate_units(table: EmbeddingTable, aggregation: Aggregation) -> EmbeddingTable:
    """Fold unit rows (``sample#unit``) into one vector per sample.

    Raises:
        FormatError: if ``aggregation`` is SINGLE and a sample has several rows
    """
    groups: dict[str, list[NDArray[np.float64]]] = defaultdict(list)
    for unit_id, vector in table.rows.items():
        groups[sample_key(unit_id)].append(vector)

    rows: dict[str, NDArray[np.float64]] = {}
    for sample_id, vectors in groups.items():
        if aggregation is Aggregation.SUM:
            rows[sample_id] = aggregate_sum(vectors)
        elif aggregation is Aggregation.MEAN:
            rows[sample_id] = aggregate_mean(vectors)
        else:
            if len(vectors) != 1:
                raise FormatError(
                    f"Sample {sample_id} has {len(vectors)} rows; one aggregated vector expected"
                )
            rows[sample_id] = vectors[0]
    return EmbeddingTable(dim=table.dim, rows=rows)
