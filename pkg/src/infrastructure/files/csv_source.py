"""CSV adapter for review exports, CK metric tables and embedding files.

Reads with pandas and hands domain entities to the application layer. All
file-layout knowledge (column names, id derivation, missing-cell markers)
stays in this module.
"""

from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from application.ports import DatasetSource
from domain.entities import EmbeddingTable, MetricColumn, RawMetricTable, ReviewRecord
from domain.enums import ColumnKind, MetricLevel, Severity, Smell
from domain.exceptions import DataError, FormatError, ParseError, PathError, SchemaError
from infrastructure.config import ReviewColumns
from infrastructure.files.ck_columns import IDENTITY_COLUMNS, column_kind, metric_names
from infrastructure.logging import get_logger

logger = get_logger(__name__)

SOURCE_SUFFIX = ".java"
ID_SEPARATOR = "::"
_MISSING_MARKERS = frozenset({"", "na", "nan", "null"})


def _require_file(path: Path) -> None:
    if not path.is_file():
        raise PathError(f"File not found: {path}")


def _read_text_frame(path: Path) -> pd.DataFrame:
    """Every cell as a string; a file with no header yields an empty frame."""
    _require_file(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8-sig")
    except pd.errors.EmptyDataError:
        return pd.DataFrame()
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise FormatError(f"{path.name} is not a readable CSV file: {e}") from e
    frame.columns = [str(column).strip() for column in frame.columns]
    return frame


def _cell(row: dict[str, Any], column: str) -> str:
    value = row.get(column)
    return value.strip() if isinstance(value, str) else ""


def _numeric_cells(cells: pd.Series, name: str) -> NDArray[np.float64]:
    text = cells.fillna("").astype(str).str.strip()
    missing = text.str.lower().isin(_MISSING_MARKERS)
    values = pd.to_numeric(text.where(~missing), errors="coerce")
    invalid = values.isna() & ~missing
    if invalid.any():
        raise FormatError(f"Metric {name} has non-numeric value '{text[invalid].iloc[0]}'")
    array = values.to_numpy(dtype=np.float64)
    if np.isinf(array).any():
        raise DataError(f"Metric {name} has an infinite value")
    return array


def _categorical_cells(cells: pd.Series) -> NDArray[np.object_]:
    text = cells.fillna("").astype(str).str.strip()
    return np.array(
        [None if value.lower() in _MISSING_MARKERS else value for value in text], dtype=object
    )


class CsvDatasetSource(DatasetSource):
    """Read experiment inputs from CSV files and a directory of Java sources.

    Usage:
        source = CsvDatasetSource(ReviewColumns(smell="type", severity="level"))
        reviews = source.load_reviews(Path("mlcq.csv"))
        table = source.load_metric_table(Path("method.csv"), MetricLevel.METHOD)
    """

    def __init__(self, review_columns: ReviewColumns | None = None) -> None:
        """Initialize source.

        Args:
            review_columns: Physical column names of the review export
        """
        self.review_columns = review_columns or ReviewColumns()

    def load_reviews(self, path: Path) -> list[ReviewRecord]:
        """Read a review export, one record per row in file order.

        Rows are numbered from 1 starting after the header. Empty severities
        are rejected rather than treated as abstentions.
        """
        frame = _read_text_frame(path)
        mapping = self.review_columns
        required = [mapping.sample_id, mapping.smell, mapping.severity, mapping.reviewer_id]
        if mapping.source_ref is not None:
            required.append(mapping.source_ref)
        missing = [column for column in required if column not in frame.columns]
        if missing:
            raise SchemaError(f"{path.name} lacks column(s) {', '.join(missing)}")

        records: list[ReviewRecord] = []
        seen: set[tuple[str, Smell, str]] = set()
        for row_number, row in enumerate(frame.to_dict("records"), start=1):
            sample_id = _cell(row, mapping.sample_id)
            reviewer_id = _cell(row, mapping.reviewer_id)
            if not sample_id:
                raise ParseError("empty sample id", row_number)
            if not reviewer_id:
                raise ParseError("empty reviewer id", row_number)

            raw_smell = _cell(row, mapping.smell)
            try:
                smell = Smell.parse(raw_smell)
            except ValueError as e:
                raise ParseError(f"unknown smell '{raw_smell}'", row_number) from e
            raw_severity = _cell(row, mapping.severity)
            if not raw_severity:
                raise ParseError("missing severity", row_number)
            try:
                severity = Severity.parse(raw_severity)
            except ValueError as e:
                raise ParseError(f"unknown severity '{raw_severity}'", row_number) from e

            key = (sample_id, smell, reviewer_id)
            if key in seen:
                raise ParseError(
                    f"reviewer {reviewer_id} already judged {smell.value} in {sample_id}",
                    row_number,
                )
            seen.add(key)

            source_ref = _cell(row, mapping.source_ref) if mapping.source_ref else ""
            records.append(
                ReviewRecord(
                    sample_id=sample_id,
                    smell=smell,
                    severity=severity,
                    reviewer_id=reviewer_id,
                    source_ref=source_ref or None,
                )
            )

        logger.info("Reviews loaded", path=str(path), records=len(records))
        return records

    def load_metric_table(self, path: Path, level: MetricLevel) -> RawMetricTable:
        """Read a CK export, keeping the recognised metrics in file order.

        Header names match the metric list case-insensitively. Sample ids come
        from a ``sample_id`` column when present, otherwise from
        ``file::class`` (plus ``::method`` at method level).

        Raises:
            FormatError: if no metric is recognised, ids cannot be derived
                or repeat, or a numeric cell is not a number
        """
        frame = _read_text_frame(path)
        catalogue = {name.lower(): name for name in metric_names(level)}

        recognised: dict[str, str] = {}
        unknown: list[str] = []
        for physical in frame.columns:
            key = physical.lower()
            if key in IDENTITY_COLUMNS:
                continue
            canonical = catalogue.get(key)
            if canonical is None:
                unknown.append(physical)
            elif canonical in recognised:
                raise FormatError(f"{path.name} repeats metric column {canonical}")
            else:
                recognised[canonical] = physical
        if unknown:
            logger.warning(
                "Ignoring unknown CK columns", path=str(path), level=level.value, columns=unknown
            )
        if not recognised:
            raise FormatError(f"{path.name} has no recognised {level.value}-level metric column")

        sample_ids = self._sample_ids(frame, level, path)
        data: dict[str, NDArray[Any]] = {}
        columns: list[MetricColumn] = []
        for name, physical in recognised.items():
            kind = column_kind(name)
            cells = frame[physical]
            if kind is ColumnKind.CATEGORICAL:
                data[name] = _categorical_cells(cells)
            else:
                data[name] = _numeric_cells(cells, name)
            columns.append(MetricColumn(name, kind))

        logger.info(
            "Metric table loaded",
            path=str(path),
            level=level.value,
            rows=len(sample_ids),
            metrics=len(columns),
        )
        return RawMetricTable(
            level=level, columns=tuple(columns), sample_ids=tuple(sample_ids), data=data
        )

    def _sample_ids(self, frame: pd.DataFrame, level: MetricLevel, path: Path) -> list[str]:
        by_key = {column.lower(): column for column in frame.columns}
        if "sample_id" in by_key:
            ids = frame[by_key["sample_id"]].astype(str).str.strip().tolist()
        elif "file" in by_key and "class" in by_key:
            parts = [frame[by_key["file"]], frame[by_key["class"]]]
            if level is MetricLevel.METHOD and "method" in by_key:
                parts.append(frame[by_key["method"]])
            joined = parts[0].astype(str).str.strip()
            for part in parts[1:]:
                joined = joined + ID_SEPARATOR + part.astype(str).str.strip()
            ids = joined.tolist()
        else:
            raise FormatError(
                f"{path.name} needs a sample_id column or file and class columns"
            )

        if any(not sample_id for sample_id in ids):
            raise FormatError(f"{path.name} has a row with an empty sample id")
        duplicated = pd.Series(ids)[pd.Series(ids).duplicated()]
        if not duplicated.empty:
            raise FormatError(f"{path.name} repeats sample id {duplicated.iloc[0]}")
        return ids

    def load_embeddings(self, path: Path) -> EmbeddingTable:
        """Read a header-less ``unit_id,v1,...,vd`` file.

        An empty file yields an empty table and a warning.
        """
        _require_file(path)
        try:
            frame = pd.read_csv(path, header=None, dtype=str, keep_default_na=False)
        except pd.errors.EmptyDataError:
            logger.warning("Embedding file is empty", path=str(path))
            return EmbeddingTable(dim=0, rows={})
        except pd.errors.ParserError as e:
            raise FormatError(f"{path.name} has rows of different widths: {e}") from e
        except UnicodeDecodeError as e:
            raise FormatError(f"{path.name} is not UTF-8 text: {e}") from e

        if frame.shape[1] < 2:
            raise FormatError(f"{path.name} needs an id and at least one value per row")
        short = frame.isna().to_numpy().any(axis=1)
        if short.any():
            row = int(np.flatnonzero(short)[0]) + 1
            raise FormatError(f"{path.name} row {row} is shorter than the first row")

        ids = frame[0].str.strip()
        duplicated = ids[ids.duplicated()]
        if not duplicated.empty:
            raise FormatError(f"{path.name} repeats unit id {duplicated.iloc[0]}")
        try:
            values = frame.iloc[:, 1:].apply(lambda c: c.str.strip()).astype(np.float64)
        except ValueError as e:
            raise FormatError(f"{path.name} has a non-numeric value: {e}") from e
        matrix = values.to_numpy()
        finite = np.isfinite(matrix).all(axis=1)
        if not finite.all():
            bad = ids.iloc[int(np.flatnonzero(~finite)[0])]
            raise DataError(f"{path.name} row {bad} contains non-finite values")

        logger.info("Embeddings loaded", path=str(path), units=len(ids), dim=matrix.shape[1])
        return EmbeddingTable(
            dim=matrix.shape[1],
            rows={unit_id: matrix[i].copy() for i, unit_id in enumerate(ids)},
        )

    def list_sources(self, sources_dir: Path) -> list[str]:
        if not sources_dir.is_dir():
            raise PathError(f"Sources directory not found: {sources_dir}")
        return sorted(path.stem for path in sources_dir.glob(f"*{SOURCE_SUFFIX}") if path.is_file())

    def load_source(self, sources_dir: Path, sample_id: str) -> str:
        path = sources_dir / f"{sample_id}{SOURCE_SUFFIX}"
        if not path.is_file():
            raise PathError(f"No source file for sample {sample_id}: {path}")
        try:
            return path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"{path.name} is not UTF-8 text: {e}") from e
