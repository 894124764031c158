"""Metric tables before and after structural preprocessing."""

from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray

from domain.enums import ColumnKind, MetricLevel
from domain.exceptions import ContractViolation, DataError, SchemaError


@dataclass(frozen=True, slots=True)
class MetricColumn:
    """Name and kind of one metric column."""

    name: str
    kind: ColumnKind


@dataclass(frozen=True, slots=True)
class RawMetricTable:
    """CK metric values keyed by sample, missing cells kept distinct from zero.

    Numeric columns are float arrays with ``nan`` for missing cells;
    categorical columns are object arrays of strings with ``None`` for
    missing cells.

    Attributes:
        level: Class- or method-level export
        columns: Ordered column descriptors
        sample_ids: Row keys
        data: Column name -> cell array (length = number of rows)
        category_codes: Label-encoding maps recorded by ``encode_categoricals``
        removed_columns: Columns dropped by pruning steps, in removal order
    """

    level: MetricLevel
    columns: tuple[MetricColumn, ...]
    sample_ids: tuple[str, ...]
    data: dict[str, NDArray[np.generic]]
    category_codes: dict[str, dict[str, int]] = field(default_factory=dict)
    removed_columns: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        names = [column.name for column in self.columns]
        if len(set(names)) != len(names):
            raise SchemaError(f"Duplicate metric column names in {names}")
        if set(names) != set(self.data):
            raise SchemaError("Column descriptors and data keys differ")
        n_rows = len(self.sample_ids)
        for name, cells in self.data.items():
            if len(cells) != n_rows:
                raise ContractViolation(
                    f"Column {name} has {len(cells)} cells, expected {n_rows}"
                )

    @property
    def n_rows(self) -> int:
        return len(self.sample_ids)

    @property
    def feature_names(self) -> list[str]:
        return [column.name for column in self.columns]

    def column(self, name: str) -> MetricColumn:
        for column in self.columns:
            if column.name == name:
                return column
        raise SchemaError(f"Metric column '{name}' not in table")

    def missing_mask(self, name: str) -> NDArray[np.bool_]:
        """Boolean mask of missing cells in column ``name``."""
        cells = self.data[name]
        if self.column(name).kind is ColumnKind.NUMERIC:
            return np.isnan(cells.astype(np.float64))
        return np.array([cell is None for cell in cells], dtype=bool)

    def without(self, names: list[str]) -> "RawMetricTable":
        """Copy of the table without ``names``, recording their removal."""
        drop = set(names)
        return replace(
            self,
            columns=tuple(c for c in self.columns if c.name not in drop),
            data={k: v for k, v in self.data.items() if k not in drop},
            removed_columns=self.removed_columns + tuple(names),
        )

    def select_rows(self, sample_ids: list[str]) -> "RawMetricTable":
        """Rows for ``sample_ids`` in the given order.

        Raises:
            DataError: if a sample id has no row
        """
        position = {sample_id: i for i, sample_id in enumerate(self.sample_ids)}
        missing = [s for s in sample_ids if s not in position]
        if missing:
            raise DataError(
                f"{len(missing)} samples have no metric row, e.g. {missing[:3]}"
            )
        rows = np.array([position[s] for s in sample_ids], dtype=np.int64)
        return replace(
            self,
            sample_ids=tuple(sample_ids),
            data={k: v[rows] for k, v in self.data.items()},
        )

    def numeric_matrix(self) -> NDArray[np.float64]:
        """All columns as an ``(n_rows, n_features)`` float matrix, ``nan`` = missing.

        Raises:
            ContractViolation: if a categorical column is still unencoded
        """
        for column in self.columns:
            if column.kind is ColumnKind.CATEGORICAL:
                raise ContractViolation(
                    f"Column {column.name} is categorical; encode it first"
                )
        if not self.columns:
            return np.zeros((self.n_rows, 0))
        return np.column_stack(
            [self.data[c.name].astype(np.float64) for c in self.columns]
        )


@dataclass(frozen=True, slots=True)
class MetricMatrix:
    """Dense, fully observed feature matrix after preprocessing."""

    sample_ids: tuple[str, ...]
    feature_names: tuple[str, ...]
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.values.shape != (len(self.sample_ids), len(self.feature_names)):
            raise ContractViolation(
                f"Matrix shape {self.values.shape} does not match "
                f"{len(self.sample_ids)} rows x {len(self.feature_names)} features"
            )
        if not np.all(np.isfinite(self.values)):
            raise DataError("Metric matrix contains non-finite values")
