"""Review records and the labeled corpus derived from them."""

from dataclasses import dataclass, field

from domain.enums import Severity, Smell
from domain.exceptions import ContractViolation, DegenerateCorpusError


@dataclass(frozen=True, slots=True)
class ReviewRecord:
    """One reviewer's severity verdict for one smell in one sample."""

    sample_id: str
    smell: Smell
    severity: Severity
    reviewer_id: str
    source_ref: str | None = None


@dataclass(frozen=True, slots=True)
class LabeledSample:
    """A sample with its reconciled binary label (1 = smelly).

    Attributes:
        sample_id: Opaque key shared with metric and embedding files
        smell: Smell the label refers to
        label: 1 for smelly, 0 for non-smelly
        source_ref: Path or inline code text, when the export carries one
    """

    sample_id: str
    smell: Smell
    label: int
    source_ref: str | None = None

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise ContractViolation(f"Label must be 0 or 1, got {self.label}")


@dataclass(frozen=True, slots=True)
class LabeledCorpus:
    """Binary labeled samples for a single smell.

    Samples are kept in lexicographic ``sample_id`` order.

    Attributes:
        smell: Smell the corpus labels
        samples: Ordered labeled samples
        dropped_ties: Samples removed because their vote was tied
    """

    smell: Smell
    samples: tuple[LabeledSample, ...]
    dropped_ties: int = 0
    counts: tuple[int, int] = field(init=False)

    def __post_init__(self) -> None:
        for sample in self.samples:
            if sample.smell is not self.smell:
                raise ContractViolation(
                    f"Sample {sample.sample_id} is labeled for {sample.smell.value}, "
                    f"corpus is {self.smell.value}"
                )
        positives = sum(sample.label for sample in self.samples)
        object.__setattr__(self, "counts", (len(self.samples) - positives, positives))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def n_negative(self) -> int:
        return self.counts[0]

    @property
    def n_positive(self) -> int:
        return self.counts[1]

    @property
    def sample_ids(self) -> list[str]:
        return [sample.sample_id for sample in self.samples]

    @property
    def labels(self) -> list[int]:
        return [sample.label for sample in self.samples]

    def subset(self, indices: list[int]) -> "LabeledCorpus":
        """Corpus restricted to ``indices``, re-sorted by sample id."""
        chosen = sorted((self.samples[i] for i in indices), key=lambda s: s.sample_id)
        return LabeledCorpus(smell=self.smell, samples=tuple(chosen))

    def require_both_classes(self) -> None:
        """Reject corpora that cannot train a binary classifier.

        Raises:
            DegenerateCorpusError: if either class is empty
        """
        if self.n_positive < 1 or self.n_negative < 1:
            raise DegenerateCorpusError(
                f"{self.smell.value} corpus needs both classes, "
                f"got {self.n_negative} negative / {self.n_positive} positive"
            )
