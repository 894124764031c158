"""Tests for the run directory artifact store."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from domain.entities import EmbeddingTable, LabeledCorpus, LabeledSample
from domain.enums import Ablation, Protocol, Smell
from domain.exceptions import FormatError, PathError, VersioningError
from domain.model import EnsembleModel, build_model
from domain.services import build_vocab, index_and_pad
from domain.value_objects import (
    ConfusionMatrix,
    FoldOutcome,
    FoldReport,
    FoldScores,
    ModelConfig,
    PredictionRecord,
    TrainingHistory,
)
from infrastructure.files import RunDirectory, write_text_atomic


@pytest.fixture
def store(tmp_path: Path) -> RunDirectory:
    return RunDirectory(tmp_path / "run")


def _report() -> FoldReport:
    return FoldReport(
        run="lm",
        smell=Smell.LONG_METHOD,
        protocol=Protocol.SPLIT_80_20,
        config_fingerprint="abc",
        seed=42,
        folds=(FoldOutcome(1, FoldScores(1.0, 0.5, 2 / 3, 0.4), ConfusionMatrix(1, 0, 1, 3)),),
    )


class TestRunDirectory:
    def test_report_round_trip(self, store: RunDirectory) -> None:
        store.save_report(_report())

        assert store.load_report() == _report()
        rows = pd.read_csv(store.location / "report.csv", dtype=str)
        assert rows["fold"].tolist() == ["1", "mean"]

    def test_missing_report(self, store: RunDirectory) -> None:
        with pytest.raises(PathError):
            store.load_report()

    def test_malformed_report(self, store: RunDirectory) -> None:
        write_text_atomic(store.location / "report.json", "{}")
        with pytest.raises(FormatError):
            store.load_report()

    def test_predictions_round_trip(self, store: RunDirectory) -> None:
        records = [
            PredictionRecord(fold=1, sample_id="007", truth=1, probability=0.75, prediction=1),
            PredictionRecord(fold=2, sample_id="A::b", truth=0, probability=0.25, prediction=0),
        ]
        store.save_predictions(records)
        assert store.load_predictions() == records

    def test_checkpoint_round_trip(self, store: RunDirectory) -> None:
        config = ModelConfig(ablation=Ablation.STRUCTURAL_ONLY, seed=4)
        network = build_model(config, 0, 3)
        store.save_checkpoint(EnsembleModel(network, {"features": {"input_length": 0}}))

        restored = store.load_checkpoint(config.fingerprint())

        assert restored.preprocessing == {"features": {"input_length": 0}}
        x = np.random.default_rng(0).standard_normal((5, 3))
        np.testing.assert_allclose(
            restored.network.forward_pair(None, x), network.forward_pair(None, x)
        )

    def test_corrupt_checkpoint(self, store: RunDirectory) -> None:
        write_text_atomic(store.location / "checkpoint.json", "{truncated")
        with pytest.raises(VersioningError):
            store.load_checkpoint()

    def test_missing_checkpoint(self, store: RunDirectory) -> None:
        with pytest.raises(PathError):
            store.load_checkpoint()

    def test_corpus_and_counts(self, store: RunDirectory) -> None:
        corpus = LabeledCorpus(
            smell=Smell.GOD_CLASS,
            samples=(
                LabeledSample("a", Smell.GOD_CLASS, 1),
                LabeledSample("b", Smell.GOD_CLASS, 0),
            ),
            dropped_ties=2,
        )
        path = store.save_corpus(corpus)

        assert path.name == "corpus_GodClass.csv"
        assert path.read_text(encoding="utf-8") == "sample_id,label\na,1\nb,0\n"
        counts = (store.location / "corpus_GodClass.json").read_text(encoding="utf-8")
        assert '"dropped_ties": 2' in counts

    def test_token_matrix(self, store: RunDirectory) -> None:
        vocab = build_vocab([["a", "b"]])
        sequences = [
            index_and_pad(["a"], vocab, 3, "s1"),
            index_and_pad(["b", "a"], vocab, 3, "s2"),
        ]
        path = store.save_token_matrix(sequences, vocab)

        frame = pd.read_csv(path)
        assert list(frame.columns) == ["sample_id", "true_length", "t0", "t1", "t2"]
        assert frame["true_length"].tolist() == [1, 2]

    def test_embeddings_are_header_less(self, store: RunDirectory) -> None:
        table = EmbeddingTable(dim=2, rows={"b": np.array([1.0, 2.0]), "a": np.array([3.0, 4.0])})
        path = store.save_embeddings(table)
        assert path.read_text(encoding="utf-8").splitlines() == ["a,3.0,4.0", "b,1.0,2.0"]

    def test_history(self, store: RunDirectory) -> None:
        path = store.save_history(TrainingHistory(epoch_losses=[0.7, 0.5]), name="fold_1")
        assert path.read_text(encoding="utf-8") == "epoch,mean_loss\n1,0.7\n2,0.5\n"

    def test_child_is_nested(self, store: RunDirectory) -> None:
        assert store.child("k3_b1").location == store.location / "k3_b1"

    def test_writes_leave_no_temporary_files(self, store: RunDirectory) -> None:
        store.save_report(_report())
        store.save_config({"seed": 42})
        leftovers = [p.name for p in store.location.iterdir() if p.name.endswith(".tmp")]
        assert leftovers == []
