"""Reconcile reviewer verdicts into binary labels and split corpora."""

import math
from collections import defaultdict
from collections.abc import Iterable
from fractions import Fraction

import numpy as np

from domain.entities import LabeledCorpus, LabeledSample, ReviewRecord
from domain.enums import Smell
from domain.exceptions import ContractViolation, EmptyCorpusError, StratificationError


def majority_vote(reviews: list[ReviewRecord]) -> int | None:
    """Binary label of one (sample, smell) pair, or None on a tie.

    Minor, major and critical all count as smelly votes; ``none`` counts as
    a non-smelly vote.

    Raises:
        ContractViolation: if ``reviews`` is empty or mixes samples/smells
    """
    if not reviews:
        raise ContractViolation("majority_vote needs at least one review")
    first = reviews[0]
    for review in reviews:
        if review.sample_id != first.sample_id or review.smell is not first.smell:
            raise ContractViolation("All reviews must share sample_id and smell")

    smelly = sum(1 for review in reviews if review.severity.is_smelly)
    clean = len(reviews) - smelly
    if smelly > clean:
        return 1
    if clean > smelly:
        return 0
    return None


def build_corpus(reviews: Iterable[ReviewRecord], smell: Smell) -> LabeledCorpus:
    """Group reviews of ``smell`` by sample, vote, and drop ties.

    Raises:
        ContractViolation: if there is no review for ``smell``
        EmptyCorpusError: if every sample is tied
    """
    grouped: dict[str, list[ReviewRecord]] = defaultdict(list)
    for review in reviews:
        if review.smell is smell:
            grouped[review.sample_id].append(review)
    if not grouped:
        raise ContractViolation(f"No reviews for {smell.value}")

    samples: list[LabeledSample] = []
    ties = 0
    for sample_id in sorted(grouped):
        group = grouped[sample_id]
        label = majority_vote(group)
        if label is None:
            ties += 1
            continue
        source_ref = next((r.source_ref for r in group if r.source_ref), None)
        samples.append(
            LabeledSample(sample_id=sample_id, smell=smell, label=label, source_ref=source_ref)
        )

    if not samples:
        raise EmptyCorpusError(f"All {ties} {smell.value} samples are tied")

    return LabeledCorpus(smell=smell, samples=tuple(samples), dropped_ties=ties)


def _round_half_up(count: int, fraction: float) -> int:
    """``count * fraction`` rounded half up, using the fraction's decimal form."""
    return math.floor(count * Fraction(str(fraction)) + Fraction(1, 2))


def split_train_test(
    corpus: LabeledCorpus,
    test_fraction: float,
    seed: int,
) -> tuple[LabeledCorpus, LabeledCorpus]:
    """Stratified hold-out split.

    Each class is shuffled independently by a generator seeded with
    ``seed`` and ``round(n_class * test_fraction)`` of its samples (half
    rounds up) go to the test corpus. Both outputs keep lexicographic order.

    Raises:
        ContractViolation: if ``test_fraction`` is not in (0, 1)
        StratificationError: if a class has fewer than 2 samples
    """
    if not 0 < test_fraction < 1:
        raise ContractViolation(f"test_fraction must be in (0, 1), got {test_fraction}")

    rng = np.random.default_rng(seed)
    labels = corpus.labels
    test_indices: list[int] = []
    for cls in (1, 0):
        members = [i for i, label in enumerate(labels) if label == cls]
        if len(members) < 2:
            raise StratificationError(
                f"Class {cls} has {len(members)} samples; at least 2 are needed to split"
            )
        n_test = _round_half_up(len(members), test_fraction)
        n_test = min(max(n_test, 1), len(members) - 1)
        shuffled = rng.permutation(len(members))
        test_indices.extend(members[i] for i in shuffled[:n_test])

    chosen = set(test_indices)
    train_indices = [i for i in range(len(corpus)) if i not in chosen]
    return corpus.subset(train_indices), corpus.subset(test_indices)
