"""Fused detection model: assembly, training and checkpoint state."""

from domain.model.checkpoint import EnsembleModel, from_checkpoint, to_checkpoint
from domain.model.network import (
    EnsembleNetwork,
    SemanticChain,
    build_model,
    minimum_input_length,
    seeded_generators,
    semantic_chain,
)
from domain.model.trainer import (
    TrainingData,
    apply_threshold,
    evaluate_loss,
    predict,
    predict_proba,
    train,
)

__all__ = [
    "EnsembleNetwork",
    "EnsembleModel",
    "SemanticChain",
    "build_model",
    "semantic_chain",
    "minimum_input_length",
    "seeded_generators",
    "to_checkpoint",
    "from_checkpoint",
    "TrainingData",
    "train",
    "evaluate_loss",
    "predict",
    "predict_proba",
    "apply_threshold",
]
