"""Run directory adapter - every artifact of one run as CSV/JSON files."""

import json
from collections.abc import Sequence
from io import StringIO
from pathlib import Path
from typing import Any

import pandas as pd

from application.ports import ArtifactStore
from application.services import FOLD_COLUMNS, fold_rows
from domain.entities import EmbeddingTable, LabeledCorpus, MetricMatrix, TokenSequence, Vocab
from domain.exceptions import FormatError, PathError, VersioningError
from domain.model import EnsembleModel, from_checkpoint, to_checkpoint
from domain.services import MetricPipelineState
from domain.value_objects import FoldReport, PredictionRecord, TrainingHistory
from infrastructure.files.atomic import write_text_atomic
from infrastructure.logging import get_logger

logger = get_logger(__name__)

CONFIG_FILE = "config.json"
METRICS_FILE = "metrics.csv"
METRICS_STATE_FILE = "metrics.json"
TOKENS_FILE = "tokens.csv"
VOCAB_FILE = "vocab.json"
EMBEDDINGS_FILE = "embeddings.csv"
CHECKPOINT_FILE = "checkpoint.json"
REPORT_FILE = "report.json"
REPORT_CSV_FILE = "report.csv"
PREDICTIONS_FILE = "predictions.csv"
COMPARISON_FILE = "comparison.txt"
COMPARISON_CSV_FILE = "comparison.csv"
PREDICTION_COLUMNS = ("fold", "sample_id", "truth", "probability", "prediction")


def _json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(frame: pd.DataFrame, header: bool = True) -> str:
    buffer = StringIO()
    frame.to_csv(buffer, index=False, header=header, lineterminator="\n")
    return buffer.getvalue()


class RunDirectory(ArtifactStore):
    """Artifact store backed by one directory on disk.

    All writes go through ``write_text_atomic``; the directory is created
    on first write.

    Usage:
        store = RunDirectory(Path("runs/lm_full"))
        store.save_report(report)
        report = store.load_report()
    """

    def __init__(self, root: Path) -> None:
        self.root = root

    @property
    def location(self) -> Path:
        return self.root

    def child(self, name: str) -> "RunDirectory":
        return RunDirectory(self.root / name)

    def _read_json(self, name: str, missing: str) -> Any:
        path = self.root / name
        if not path.is_file():
            raise PathError(f"{missing}: {path}")
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise FormatError(f"{path} is not valid JSON: {e}") from e

    def save_config(self, config: dict[str, Any]) -> Path:
        return write_text_atomic(self.root / CONFIG_FILE, _json_text(config))

    def save_corpus(self, corpus: LabeledCorpus) -> Path:
        """Write ``corpus_<Smell>.csv`` (sample_id,label) and its counts sidecar."""
        stem = f"corpus_{corpus.smell.value}"
        frame = pd.DataFrame(
            {"sample_id": corpus.sample_ids, "label": corpus.labels},
            columns=["sample_id", "label"],
        )
        path = write_text_atomic(self.root / f"{stem}.csv", _csv_text(frame))
        counts = {
            "smell": corpus.smell.value,
            "negatives": corpus.n_negative,
            "positives": corpus.n_positive,
            "dropped_ties": corpus.dropped_ties,
        }
        write_text_atomic(self.root / f"{stem}.json", _json_text(counts))
        return path

    def save_metric_matrix(self, matrix: MetricMatrix, state: MetricPipelineState) -> Path:
        frame = pd.DataFrame(matrix.values, columns=list(matrix.feature_names))
        frame.insert(0, "sample_id", list(matrix.sample_ids))
        path = write_text_atomic(self.root / METRICS_FILE, _csv_text(frame))
        write_text_atomic(self.root / METRICS_STATE_FILE, _json_text(state.to_dict()))
        return path

    def save_token_matrix(self, sequences: Sequence[TokenSequence], vocab: Vocab) -> Path:
        """Write one row per sample: id, true length, then the padded indices."""
        width = len(sequences[0].indices) if sequences else 0
        frame = pd.DataFrame(
            [seq.indices.tolist() for seq in sequences],
            columns=[f"t{i}" for i in range(width)],
        )
        frame.insert(0, "true_length", [seq.true_length for seq in sequences])
        frame.insert(0, "sample_id", [seq.sample_id for seq in sequences])
        path = write_text_atomic(self.root / TOKENS_FILE, _csv_text(frame))
        vocab_payload = {
            "padded_length": width,
            "unk_id": vocab.unk_id,
            "tokens": vocab.token_to_id,
        }
        write_text_atomic(self.root / VOCAB_FILE, _json_text(vocab_payload))
        return path

    def save_embeddings(self, table: EmbeddingTable) -> Path:
        """Header-less ``sample_id,v1,...,vd`` rows, the layout the loader reads."""
        ids = sorted(table.rows)
        frame = pd.DataFrame([table.rows[i].tolist() for i in ids])
        frame.insert(0, "sample_id", ids)
        return write_text_atomic(self.root / EMBEDDINGS_FILE, _csv_text(frame, header=False))

    def save_checkpoint(self, model: EnsembleModel) -> Path:
        return write_text_atomic(
            self.root / CHECKPOINT_FILE, json.dumps(to_checkpoint(model)) + "\n"
        )

    def load_checkpoint(self, expected_fingerprint: str | None = None) -> EnsembleModel:
        path = self.root / CHECKPOINT_FILE
        if not path.is_file():
            raise PathError(f"Run has no checkpoint: {path}")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise VersioningError(f"Checkpoint {path} is unreadable: {e}") from e
        if not isinstance(payload, dict):
            raise VersioningError(f"Checkpoint {path} is not a JSON object")
        return from_checkpoint(payload, expected_fingerprint)

    def save_history(self, history: TrainingHistory, name: str = "history") -> Path:
        frame = pd.DataFrame(history.rows(), columns=["epoch", "mean_loss"])
        return write_text_atomic(self.root / f"{name}.csv", _csv_text(frame))

    def save_report(self, report: FoldReport) -> Path:
        path = write_text_atomic(self.root / REPORT_FILE, _json_text(report.to_dict()))
        frame = pd.DataFrame(fold_rows(report), columns=list(FOLD_COLUMNS))
        write_text_atomic(self.root / REPORT_CSV_FILE, _csv_text(frame))
        return path

    def load_report(self) -> FoldReport:
        payload = self._read_json(REPORT_FILE, "Run has no report")
        try:
            return FoldReport.from_dict(payload)
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"Report in {self.root} is malformed: {e}") from e

    def save_predictions(self, predictions: Sequence[PredictionRecord]) -> Path:
        frame = pd.DataFrame(
            [
                (p.fold, p.sample_id, p.truth, p.probability, p.prediction)
                for p in predictions
            ],
            columns=list(PREDICTION_COLUMNS),
        )
        return write_text_atomic(self.root / PREDICTIONS_FILE, _csv_text(frame))

    def load_predictions(self) -> list[PredictionRecord]:
        path = self.root / PREDICTIONS_FILE
        if not path.is_file():
            raise PathError(f"Run has no predictions: {path}")
        frame = pd.read_csv(path, dtype={"sample_id": str}, keep_default_na=False)
        return [
            PredictionRecord(
                fold=int(row["fold"]),
                sample_id=row["sample_id"],
                truth=int(row["truth"]),
                probability=float(row["probability"]),
                prediction=int(row["prediction"]),
            )
            for row in frame.to_dict("records")
        ]

    def save_comparison(self, table: str, rows: Sequence[dict[str, str]]) -> Path:
        path = write_text_atomic(self.root / COMPARISON_FILE, table)
        columns = list(rows[0]) if rows else []
        frame = pd.DataFrame(list(rows), columns=columns, dtype=str)
        write_text_atomic(self.root / COMPARISON_CSV_FILE, _csv_text(frame))
        logger.info("Comparison saved", path=str(path), runs=len(rows))
        return path
