"""Semantic input types: token sequences, vocabularies and embedding tables."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from domain.exceptions import ContractViolation, DataError

PADDING_ID = 0


@dataclass(frozen=True, slots=True)
class TokenSequence:
    """Token ids of one sample, right-padded with zeros to the corpus length."""

    sample_id: str
    indices: NDArray[np.int64]
    true_length: int

    def __post_init__(self) -> None:
        if self.true_length < 0 or self.true_length > len(self.indices):
            raise ContractViolation(
                f"true_length {self.true_length} outside [0, {len(self.indices)}]"
            )
        if np.any(self.indices[self.true_length :] != PADDING_ID):
            raise ContractViolation("Padding region must hold only id 0")


@dataclass(slots=True)
class Vocab:
    """Token -> id map with dense ids starting at 1; 0 is reserved for padding.

    Tokens never seen while building map to ``unk_id`` = size + 1.
    """

    token_to_id: dict[str, int] = field(default_factory=dict)

    @property
    def next_id(self) -> int:
        return len(self.token_to_id) + 1

    @property
    def unk_id(self) -> int:
        return len(self.token_to_id) + 1

    def __len__(self) -> int:
        return len(self.token_to_id)

    def add(self, token: str) -> int:
        """Assign the next id to ``token`` if it is new; return its id."""
        if token not in self.token_to_id:
            self.token_to_id[token] = self.next_id
        return self.token_to_id[token]

    def lookup(self, token: str) -> int:
        return self.token_to_id.get(token, self.unk_id)


@dataclass(frozen=True, slots=True)
class EmbeddingTable:
    """Fixed-width vectors keyed by sample or unit id."""

    dim: int
    rows: dict[str, NDArray[np.float64]]

    def __post_init__(self) -> None:
        for key, vector in self.rows.items():
            if vector.shape != (self.dim,):
                raise ContractViolation(
                    f"Row {key} has shape {vector.shape}, expected ({self.dim},)"
                )
            if not np.all(np.isfinite(vector)):
                raise DataError(f"Row {key} contains non-finite values")

    def __len__(self) -> int:
        return len(self.rows)

    def matrix(self, ids: list[str]) -> NDArray[np.float64]:
        """Stack the vectors of ``ids`` into an ``(len(ids), dim)`` matrix.

        Raises:
            DataError: if an id has no vector
        """
        missing = [i for i in ids if i not in self.rows]
        if missing:
            raise DataError(f"{len(missing)} samples have no embedding, e.g. {missing[:3]}")
        if not ids:
            return np.zeros((0, self.dim))
        return np.stack([self.rows[i] for i in ids])
