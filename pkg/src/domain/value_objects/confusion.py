"""Confusion matrix value object."""

from dataclasses import dataclass

from domain.exceptions import ContractViolation


@dataclass(frozen=True, slots=True)
class ConfusionMatrix:
    """Counts of the four binary outcomes, smelly being the positive class."""

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            if getattr(self, name) < 0:
                raise ContractViolation(f"{name} must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def flipped(self) -> "ConfusionMatrix":
        """Matrix obtained by inverting every prediction."""
        return ConfusionMatrix(tp=self.fn, fp=self.tn, fn=self.tp, tn=self.fp)
