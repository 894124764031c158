"""Pytest fixtures and configuration."""

from pathlib import Path

import numpy as np
import pytest

from domain.value_objects import ModelConfig

N_SAMPLES = 24
EMBEDDING_DIM = 20


def _sample_ids() -> list[str]:
    return [f"s{i:02d}" for i in range(N_SAMPLES)]


def _label(index: int) -> int:
    """Every third sample is smelly: 8 positives, 16 negatives."""
    return 1 if index % 3 == 0 else 0


def _java_source(index: int, smelly: bool) -> str:
    steps = 8 if smelly else 4
    body = "\n".join(
        f"        total += values[{i}] * {index + i}; // step {i}" for i in range(steps)
    )
    return (
        f"public class Sample{index} {{\n"
        f"    private int total = {index};\n"
        f"    public int compute(int[] values) {{\n"
        f"{body}\n"
        f'        String label = "sample {index}";\n'
        "        return total;\n"
        "    }\n"
        "}\n"
    )


@pytest.fixture
def small_model_config() -> ModelConfig:
    """Tiny network that trains in well under a second."""
    return ModelConfig(
        kernel_size=3,
        filters=(2, 3),
        lstm_hidden=3,
        structural_latent=4,
        classifier_hidden=(6, 4),
        learning_rate=0.1,
        batch_size=8,
        epochs=3,
        seed=7,
    )


@pytest.fixture
def review_csv(tmp_path: Path) -> Path:
    """Three reviewers per sample for Long Method, plus one unrelated God Class row.

    Samples with an index divisible by 3 get two smelly votes out of three.
    """
    lines = ["sample_id,smell,severity,reviewer_id"]
    for index, sample_id in enumerate(_sample_ids()):
        if _label(index):
            severities = ("major", "minor", "none")
        else:
            severities = ("none", "none", "critical")
        for reviewer, severity in enumerate(severities, start=1):
            lines.append(f"{sample_id},long method,{severity},r{reviewer}")
    lines.append("s00,blob,major,r1")
    path = tmp_path / "reviews.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def ck_csv(tmp_path: Path) -> Path:
    """Method-level CK export with a constant column, a categorical and one gap."""
    rng = np.random.default_rng(3)
    lines = ["sample_id,loc,cbo,wmc,returnsQty,modifiers,unknownThing"]
    for index, sample_id in enumerate(_sample_ids()):
        smelly = _label(index)
        loc = 40 + 30 * smelly + int(rng.integers(0, 10))
        cbo = "" if index == 5 else str(int(rng.integers(1, 6)))
        wmc = 3 + 4 * smelly + int(rng.integers(0, 3))
        modifiers = "public" if index % 2 == 0 else "private"
        lines.append(f"{sample_id},{loc},{cbo},{wmc},1,{modifiers},x")
    path = tmp_path / "ck_method.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def sources_dir(tmp_path: Path) -> Path:
    """One ``<sample_id>.java`` file per sample."""
    directory = tmp_path / "sources"
    directory.mkdir()
    for index, sample_id in enumerate(_sample_ids()):
        (directory / f"{sample_id}.java").write_text(
            _java_source(index, bool(_label(index))), encoding="utf-8"
        )
    return directory


@pytest.fixture
def embeddings_csv(tmp_path: Path) -> Path:
    """Header-less unit embeddings, two ``sample#unit`` rows per sample."""
    rng = np.random.default_rng(11)
    lines = []
    for index, sample_id in enumerate(_sample_ids()):
        shift = 1.0 if _label(index) else -1.0
        for unit in range(2):
            vector = rng.normal(shift, 0.5, EMBEDDING_DIM)
            values = ",".join(f"{v:.6f}" for v in vector)
            lines.append(f"{sample_id}#{unit},{values}")
    path = tmp_path / "embeddings.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path

