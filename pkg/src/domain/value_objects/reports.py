"""Evaluation results: per-fold scores and their aggregate."""

from dataclasses import dataclass, field
from statistics import fmean
from typing import Any

from domain.enums import Protocol, Smell
from domain.value_objects.confusion import ConfusionMatrix

AGGREGATION_RULE = "arithmetic mean of per-fold metrics"
METRIC_NAMES: tuple[str, ...] = ("precision", "recall", "f1", "mcc")


@dataclass(frozen=True, slots=True)
class FoldScores:
    """Precision, recall, F1 and MCC of one evaluated portion."""

    precision: float
    recall: float
    f1: float
    mcc: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.precision, self.recall, self.f1, self.mcc)


@dataclass(frozen=True, slots=True)
class FoldOutcome:
    """Result of one fold; ``scores`` and ``confusion`` are absent when it failed."""

    index: int
    scores: FoldScores | None = None
    confusion: ConfusionMatrix | None = None
    error: str | None = None

    @property
    def completed(self) -> bool:
        return self.scores is not None


@dataclass(frozen=True, slots=True)
class FoldReport:
    """Per-fold scores of one run plus their arithmetic mean.

    Attributes:
        run: Run name shown in comparison tables
        smell: Smell the run detects
        protocol: Hold-out split or cross-validation
        config_fingerprint: Hash of the model configuration
        seed: Seed the run used
        folds: Outcomes in fold order
        aggregate: Mean scores over completed folds (None if none completed)
        aggregation: Description of how ``aggregate`` was computed
    """

    run: str
    smell: Smell
    protocol: Protocol
    config_fingerprint: str
    seed: int
    folds: tuple[FoldOutcome, ...]
    aggregate: FoldScores | None = field(init=False)
    aggregation: str = AGGREGATION_RULE

    def __post_init__(self) -> None:
        done = [fold.scores for fold in self.folds if fold.scores is not None]
        aggregate = None
        if done:
            aggregate = FoldScores(
                precision=fmean(s.precision for s in done),
                recall=fmean(s.recall for s in done),
                f1=fmean(s.f1 for s in done),
                mcc=fmean(s.mcc for s in done),
            )
        object.__setattr__(self, "aggregate", aggregate)

    @property
    def completed_folds(self) -> int:
        return sum(1 for fold in self.folds if fold.completed)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation (the aggregate is recomputed on load)."""
        return {
            "run": self.run,
            "smell": self.smell.value,
            "protocol": self.protocol.value,
            "config_fingerprint": self.config_fingerprint,
            "seed": self.seed,
            "aggregation": self.aggregation,
            "folds": [
                {
                    "index": fold.index,
                    "scores": list(fold.scores.as_tuple()) if fold.scores else None,
                    "confusion": (
                        [fold.confusion.tp, fold.confusion.fp, fold.confusion.fn, fold.confusion.tn]
                        if fold.confusion
                        else None
                    ),
                    "error": fold.error,
                }
                for fold in self.folds
            ],
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "FoldReport":
        folds = []
        for item in payload["folds"]:
            scores = FoldScores(*item["scores"]) if item["scores"] is not None else None
            confusion = ConfusionMatrix(*item["confusion"]) if item["confusion"] else None
            folds.append(
                FoldOutcome(
                    index=item["index"], scores=scores, confusion=confusion, error=item["error"]
                )
            )
        return cls(
            run=payload["run"],
            smell=Smell(payload["smell"]),
            protocol=Protocol(payload["protocol"]),
            config_fingerprint=payload["config_fingerprint"],
            seed=payload["seed"],
            folds=tuple(folds),
            aggregation=payload.get("aggregation", AGGREGATION_RULE),
        )


@dataclass(frozen=True, slots=True)
class PredictionRecord:
    """Stored prediction for one evaluated sample."""

    fold: int
    sample_id: str
    truth: int
    probability: float
    prediction: int
