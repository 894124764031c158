"""Confusion-matrix metrics and stratified fold assignment."""

import math
from collections.abc import Sequence

import numpy as np
from sklearn.metrics import confusion_matrix, precision_recall_fscore_support

from domain.exceptions import ContractViolation, StratificationError
from domain.value_objects import ConfusionMatrix, FoldScores


def confusion(pred: Sequence[int], truth: Sequence[int]) -> ConfusionMatrix:
    """Count TP, FP, FN, TN with smelly (1) as the positive class.

    Raises:
        ContractViolation: on length mismatch, empty input or non-binary values
    """
    if len(pred) != len(truth):
        raise ContractViolation(f"Length mismatch: {len(pred)} predictions, {len(truth)} labels")
    if len(pred) == 0:
        raise ContractViolation("confusion needs at least one prediction")
    for p, t in zip(pred, truth, strict=True):
        if p not in (0, 1) or t not in (0, 1):
            raise ContractViolation(f"Values must be binary, got prediction {p}, label {t}")
    tn, fp, fn, tp = confusion_matrix(list(truth), list(pred), labels=[0, 1]).ravel()
    return ConfusionMatrix(tp=int(tp), fp=int(fp), fn=int(fn), tn=int(tn))


def precision_recall_f1(cm: ConfusionMatrix) -> tuple[float, float, float]:
    """Precision, recall and F1; any 0/0 evaluates to 0.

    The four cells are replayed as one weighted example each.
    """
    precision, recall, f1, _ = precision_recall_fscore_support(
        [1, 0, 1, 0],
        [1, 1, 0, 0],
        sample_weight=[cm.tp, cm.fp, cm.fn, cm.tn],
        average="binary",
        zero_division=0,
    )
    return float(precision), float(recall), float(f1)


def mcc(cm: ConfusionMatrix) -> float:
    """Matthews correlation coefficient, 0 when any marginal is empty."""
    product = (cm.tp + cm.fp) * (cm.tp + cm.fn) * (cm.tn + cm.fp) * (cm.tn + cm.fn)
    if product == 0:
        return 0.0
    return (cm.tp * cm.tn - cm.fp * cm.fn) / math.sqrt(product)


def score(cm: ConfusionMatrix) -> FoldScores:
    precision, recall, f1 = precision_recall_f1(cm)
    return FoldScores(precision=precision, recall=recall, f1=f1, mcc=mcc(cm))


def stratified_kfold(labels: Sequence[int], k: int = 5, seed: int = 0) -> list[list[int]]:
    """Partition indices into ``k`` folds preserving the class ratio.

    Each class is shuffled with a generator seeded by ``seed`` and dealt
    round-robin over the folds. Negatives start dealing at the fold after
    the last positive so that fold sizes differ by at most one.

    Raises:
        ContractViolation: if ``k`` < 2
        StratificationError: if a class has fewer than ``k`` members
    """
    if k < 2:
        raise ContractViolation(f"k must be at least 2, got {k}")
    positives = [i for i, label in enumerate(labels) if label == 1]
    negatives = [i for i, label in enumerate(labels) if label == 0]
    for name, members in (("positive", positives), ("negative", negatives)):
        if len(members) < k:
            raise StratificationError(
                f"Only {len(members)} {name} samples; {k}-fold stratification needs {k}"
            )

    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for members in (positives, negatives):
        for position, i in enumerate(rng.permutation(len(members))):
            folds[(offset + position) % k].append(members[i])
        offset = len(members) % k
    return [sorted(fold) for fold in folds]
