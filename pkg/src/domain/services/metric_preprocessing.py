"""Structural preprocessing of CK metric tables.

The fixed order is: label-encode categoricals, drop constant columns, drop
sparse columns, impute with k nearest neighbours, standardize. Every fitted
piece is learned on training rows only and then applied unchanged to any
other rows.
"""

from dataclasses import dataclass, replace
from typing import Any

import numpy as np
from numpy.typing import NDArray
from sklearn.metrics.pairwise import nan_euclidean_distances
from sklearn.preprocessing import StandardScaler

from domain.entities import MetricColumn, MetricMatrix, RawMetricTable
from domain.enums import ColumnKind
from domain.exceptions import (
    ContractViolation,
    EmptyFeatureError,
    EncodingError,
    ImputationError,
    SchemaError,
)

DEFAULT_SPARSITY_THRESHOLD = 0.05
DEFAULT_NEIGHBORS = 5


def encode_categoricals(
    table: RawMetricTable,
    codes: dict[str, dict[str, int]] | None = None,
) -> RawMetricTable:
    """Replace categorical columns by integer codes.

    Without ``codes`` the map is fit on ``table``: distinct observed values
    sorted lexicographically get 0, 1, 2, ... With ``codes`` (an inference
    time reuse) the stored maps are applied. Missing cells stay missing.

    Raises:
        EncodingError: if a value is absent from the supplied map
    """
    fitted: dict[str, dict[str, int]] = dict(table.category_codes)
    data = dict(table.data)
    columns: list[MetricColumn] = []
    for column in table.columns:
        if column.kind is not ColumnKind.CATEGORICAL:
            columns.append(column)
            continue
        cells = table.data[column.name]
        if codes is None:
            observed = sorted({str(cell) for cell in cells if cell is not None})
            mapping = {value: code for code, value in enumerate(observed)}
        elif column.name in codes:
            mapping = codes[column.name]
        else:
            raise SchemaError(f"No stored encoding for categorical column '{column.name}'")

        encoded = np.full(len(cells), np.nan)
        for i, cell in enumerate(cells):
            if cell is None:
                continue
            if str(cell) not in mapping:
                raise EncodingError(
                    f"Value '{cell}' of column '{column.name}' was not seen during fit"
                )
            encoded[i] = mapping[str(cell)]
        data[column.name] = encoded
        fitted[column.name] = mapping
        columns.append(MetricColumn(column.name, ColumnKind.NUMERIC))

    return replace(table, columns=tuple(columns), data=data, category_codes=fitted)


def _observed_values(table: RawMetricTable, name: str) -> set[Any]:
    cells = table.data[name]
    missing = table.missing_mask(name)
    return {cells[i] for i in range(len(cells)) if not missing[i]}


def drop_constant_columns(table: RawMetricTable) -> RawMetricTable:
    """Remove columns whose observed values are all identical.

    A column with no observed value at all is also constant.

    Raises:
        EmptyFeatureError: if no column survives
    """
    constant = [name for name in table.feature_names if len(_observed_values(table, name)) <= 1]
    if len(constant) == len(table.columns):
        raise EmptyFeatureError("Every metric column is constant")
    return table.without(constant)


def drop_sparse_columns(
    table: RawMetricTable,
    threshold: float = DEFAULT_SPARSITY_THRESHOLD,
) -> RawMetricTable:
    """Remove columns whose missing fraction strictly exceeds ``threshold``.

    Raises:
        ContractViolation: if ``threshold`` is not in (0, 1) or the table is empty
        EmptyFeatureError: if no column survives
    """
    if not 0 < threshold < 1:
        raise ContractViolation(f"threshold must be in (0, 1), got {threshold}")
    if table.n_rows == 0:
        raise ContractViolation("Cannot measure sparsity of an empty table")
    sparse = [
        name
        for name in table.feature_names
        if table.missing_mask(name).sum() / table.n_rows > threshold
    ]
    if sparse and len(sparse) == len(table.columns):
        raise EmptyFeatureError(f"Every metric column exceeds {threshold:.0%} missing")
    return table.without(sparse) if sparse else table


def donor_distances(
    rows: NDArray[np.float64],
    donors: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Nan-aware Euclidean distances from each row to each donor.

    Pairs sharing no observed coordinate are at infinite distance.
    """
    if rows.shape[0] == 0 or donors.shape[0] == 0:
        return np.full((rows.shape[0], donors.shape[0]), np.inf)
    distances = np.asarray(nan_euclidean_distances(rows, donors), dtype=np.float64)
    return np.where(np.isnan(distances), np.inf, distances)


@dataclass(frozen=True, slots=True)
class KNNImputer:
    """Fill missing cells with the unweighted mean of the k nearest donor rows.

    Donors are the rows given to ``fit``. For each missing cell the
    candidates are donors that observe that column and share at least one
    observed coordinate with the receiver; they are ranked by nan-aware
    Euclidean distance, ties going to the earlier donor row.
    """

    donors: NDArray[np.float64]
    n_neighbors: int = DEFAULT_NEIGHBORS

    @classmethod
    def fit(cls, matrix: NDArray[np.float64], n_neighbors: int = DEFAULT_NEIGHBORS) -> "KNNImputer":
        if n_neighbors < 1:
            raise ContractViolation(f"n_neighbors must be positive, got {n_neighbors}")
        return cls(donors=np.array(matrix, dtype=np.float64, copy=True), n_neighbors=n_neighbors)

    def transform(self, matrix: NDArray[np.float64]) -> NDArray[np.float64]:
        """Impute ``matrix``; observed cells are never altered.

        Raises:
            SchemaError: if the column count differs from the donors'
            ImputationError: if a cell has fewer than k candidate donors
        """
        if matrix.shape[1] != self.donors.shape[1]:
            raise SchemaError(
                f"Imputer fit on {self.donors.shape[1]} features, got {matrix.shape[1]}"
            )
        result = np.array(matrix, dtype=np.float64, copy=True)
        donor_observed = ~np.isnan(self.donors)
        incomplete = np.flatnonzero(np.isnan(matrix).any(axis=1))
        all_distances = donor_distances(matrix[incomplete], self.donors)
        for r, distances in zip(incomplete, all_distances, strict=True):
            row = matrix[r]
            for c in np.flatnonzero(np.isnan(row)):
                candidates = np.flatnonzero(donor_observed[:, c] & np.isfinite(distances))
                if len(candidates) < self.n_neighbors:
                    raise ImputationError(
                        f"Column {c} of row {r} has {len(candidates)} candidate donors, "
                        f"need {self.n_neighbors}"
                    )
                order = np.argsort(distances[candidates], kind="stable")
                nearest = candidates[order[: self.n_neighbors]]
                result[r, c] = self.donors[nearest, c].mean()
        return result


def impute_knn(table: RawMetricTable, k: int = DEFAULT_NEIGHBORS) -> RawMetricTable:
    """Impute every missing cell of ``table`` using its own rows as donors."""
    matrix = table.numeric_matrix()
    imputed = KNNImputer.fit(matrix, k).transform(matrix)
    data = {name: imputed[:, j] for j, name in enumerate(table.feature_names)}
    return replace(table, data=data)


@dataclass(frozen=True, slots=True)
class ScalerState:
    """A fitted ``StandardScaler`` and the feature order it was fit on.

    The scale is the population standard deviation (divisor N).
    """

    feature_names: tuple[str, ...]
    scaler: StandardScaler

    @property
    def mean(self) -> NDArray[np.float64]:
        return np.asarray(self.scaler.mean_, dtype=np.float64)

    @property
    def std(self) -> NDArray[np.float64]:
        return np.asarray(self.scaler.scale_, dtype=np.float64)

    @classmethod
    def from_moments(
        cls,
        feature_names: tuple[str, ...],
        mean: NDArray[np.float64],
        std: NDArray[np.float64],
    ) -> "ScalerState":
        """Rebuild a fitted scaler from stored per-feature mean and std."""
        scaler = StandardScaler()
        scaler.mean_ = np.asarray(mean, dtype=np.float64)
        scaler.scale_ = np.asarray(std, dtype=np.float64)
        scaler.var_ = scaler.scale_**2
        scaler.n_features_in_ = len(feature_names)
        scaler.n_samples_seen_ = 0
        return cls(feature_names=feature_names, scaler=scaler)


def fit_standardizer(train: RawMetricTable) -> ScalerState:
    """Fit z-score parameters on fully observed training rows.

    Raises:
        ContractViolation: if a value is missing or a column has zero spread
    """
    matrix = train.numeric_matrix()
    if np.isnan(matrix).any():
        raise ContractViolation("Impute missing cells before fitting the standardizer")
    spread = np.ptp(matrix, axis=0) if matrix.shape[0] else np.zeros(matrix.shape[1])
    flat = [name for name, s in zip(train.feature_names, spread, strict=True) if s == 0]
    if flat:
        raise ContractViolation(f"Zero standard deviation for {flat}; prune constant columns first")
    return ScalerState(
        feature_names=tuple(train.feature_names), scaler=StandardScaler().fit(matrix)
    )


def apply_standardizer(state: ScalerState, table: RawMetricTable) -> MetricMatrix:
    """Map each value v of feature f to (v - mean_f) / std_f.

    Raises:
        SchemaError: if the table's features differ from the fitted ones
    """
    if tuple(table.feature_names) != state.feature_names:
        raise SchemaError(
            f"Standardizer fit on {list(state.feature_names)}, got {table.feature_names}"
        )
    matrix = table.numeric_matrix()
    values = (
        np.asarray(state.scaler.transform(matrix), dtype=np.float64) if matrix.shape[0] else matrix
    )
    return MetricMatrix(
        sample_ids=table.sample_ids, feature_names=state.feature_names, values=values
    )


@dataclass(frozen=True, slots=True)
class MetricPipelineState:
    """Everything learned from training rows, reusable on any other rows."""

    category_codes: dict[str, dict[str, int]]
    removed_constant: tuple[str, ...]
    removed_sparse: tuple[str, ...]
    imputer: KNNImputer
    scaler: ScalerState
    sparsity_threshold: float = DEFAULT_SPARSITY_THRESHOLD

    @property
    def feature_names(self) -> tuple[str, ...]:
        return self.scaler.feature_names

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready form; missing donor cells become ``None``."""
        donors = [
            [None if np.isnan(v) else float(v) for v in row] for row in self.imputer.donors
        ]
        return {
            "category_codes": self.category_codes,
            "removed_constant": list(self.removed_constant),
            "removed_sparse": list(self.removed_sparse),
            "sparsity_threshold": self.sparsity_threshold,
            "feature_names": list(self.scaler.feature_names),
            "scaler": {"mean": self.scaler.mean.tolist(), "std": self.scaler.std.tolist()},
            "imputer": {"n_neighbors": self.imputer.n_neighbors, "donors": donors},
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "MetricPipelineState":
        names = tuple(payload["feature_names"])
        donors = np.array(
            [[np.nan if v is None else v for v in row] for row in payload["imputer"]["donors"]],
            dtype=np.float64,
        ).reshape(-1, len(names))
        return cls(
            category_codes=payload["category_codes"],
            removed_constant=tuple(payload["removed_constant"]),
            removed_sparse=tuple(payload["removed_sparse"]),
            sparsity_threshold=payload["sparsity_threshold"],
            imputer=KNNImputer(donors=donors, n_neighbors=payload["imputer"]["n_neighbors"]),
            scaler=ScalerState.from_moments(
                names,
                mean=np.array(payload["scaler"]["mean"], dtype=np.float64),
                std=np.array(payload["scaler"]["std"], dtype=np.float64),
            ),
        )


class MetricPipeline:
    """Fit/transform wrapper running the preprocessing steps in their fixed order.

    Usage:
        state = MetricPipeline.fit(train_table)
        train_matrix = MetricPipeline.transform(state, train_table)
        test_matrix = MetricPipeline.transform(state, test_table)
    """

    @staticmethod
    def fit(
        train: RawMetricTable,
        n_neighbors: int = DEFAULT_NEIGHBORS,
        sparsity_threshold: float = DEFAULT_SPARSITY_THRESHOLD,
    ) -> MetricPipelineState:
        encoded = encode_categoricals(train)
        without_constant = drop_constant_columns(encoded)
        pruned = drop_sparse_columns(without_constant, sparsity_threshold)
        removed = pruned.removed_columns[len(train.removed_columns) :]
        n_constant = len(without_constant.removed_columns) - len(train.removed_columns)

        matrix = pruned.numeric_matrix()
        imputer = KNNImputer.fit(matrix, n_neighbors)
        imputed = imputer.transform(matrix)
        complete = replace(
            pruned, data={name: imputed[:, j] for j, name in enumerate(pruned.feature_names)}
        )
        return MetricPipelineState(
            category_codes=encoded.category_codes,
            removed_constant=removed[:n_constant],
            removed_sparse=removed[n_constant:],
            imputer=imputer,
            scaler=fit_standardizer(complete),
            sparsity_threshold=sparsity_threshold,
        )

    @staticmethod
    def transform(state: MetricPipelineState, table: RawMetricTable) -> MetricMatrix:
        """Apply fitted state to ``table``.

        Raises:
            SchemaError: if a retained feature is absent from ``table``
            EncodingError: if a categorical value was never seen during fit
        """
        kept_names = set(state.feature_names)
        relevant = {
            name: codes for name, codes in state.category_codes.items() if name in kept_names
        }
        present = set(table.feature_names)
        lacking = [name for name in state.feature_names if name not in present]
        if lacking:
            raise SchemaError(f"Table lacks fitted features {lacking}")
        kept = table.without([n for n in table.feature_names if n not in state.feature_names])
        ordered = replace(
            kept, columns=tuple(kept.column(name) for name in state.feature_names)
        )
        encoded = encode_categoricals(ordered, codes=relevant)
        imputed = state.imputer.transform(encoded.numeric_matrix())
        complete = replace(
            encoded,
            data={name: imputed[:, j] for j, name in enumerate(state.feature_names)},
        )
        return apply_standardizer(state.scaler, complete)
