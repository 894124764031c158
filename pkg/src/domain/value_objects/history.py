"""Training history value object."""

from dataclasses import dataclass, field


@dataclass(slots=True)
class TrainingHistory:
    """Mean mini-batch loss per epoch, in epoch order."""

    epoch_losses: list[float] = field(default_factory=list)
    initial_loss: float | None = None

    @property
    def final_loss(self) -> float:
        return self.epoch_losses[-1]

    def rows(self) -> list[tuple[int, float]]:
        """``(epoch, mean_loss)`` pairs with 1-based epochs."""
        return [(i + 1, loss) for i, loss in enumerate(self.epoch_losses)]
