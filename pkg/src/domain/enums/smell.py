"""Code smell and review enums."""

from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self


def _normalize(raw: str) -> str:
    return "".join(ch for ch in raw.strip().lower() if ch not in " _-")


class Smell(Enum):
    """The four smells covered by the review dataset."""

    LONG_METHOD = "LongMethod"
    FEATURE_ENVY = "FeatureEnvy"
    GOD_CLASS = "GodClass"
    DATA_CLASS = "DataClass"

    @property
    def alias(self) -> str:
        """Two-letter alias used in reports (LM, FE, GC, DC)."""
        return _ALIASES[self]

    @property
    def is_method_level(self) -> bool:
        """Long Method and Feature Envy are judged on methods, the rest on classes."""
        return self in (Smell.LONG_METHOD, Smell.FEATURE_ENVY)

    @classmethod
    def parse(cls, raw: str) -> Self:
        """Decode a smell name ignoring case, spaces, underscores and hyphens.

        Accepts ``long method``, ``LongMethod``, ``long_method``, the report
        aliases, and ``blob`` (the review export's name for God Class).

        Raises:
            ValueError: if the name matches no smell
        """
        key = _normalize(raw)
        for smell in cls:
            if key in (_normalize(smell.value), smell.alias.lower()):
                return smell
        if key == "blob":
            return cls(Smell.GOD_CLASS.value)
        raise ValueError(f"Unknown smell '{raw}'")


_ALIASES: dict[Smell, str] = {
    Smell.LONG_METHOD: "LM",
    Smell.FEATURE_ENVY: "FE",
    Smell.GOD_CLASS: "GC",
    Smell.DATA_CLASS: "DC",
}


class Severity(Enum):
    """Severity a reviewer assigned to one smell in one sample."""

    NONE = "none"
    MINOR = "minor"
    MAJOR = "major"
    CRITICAL = "critical"

    @property
    def is_smelly(self) -> bool:
        """Any severity other than ``none`` counts as a smelly vote."""
        return self is not Severity.NONE

    @classmethod
    def parse(cls, raw: str) -> Self:
        """Decode a severity string case-insensitively with whitespace trimmed.

        Raises:
            ValueError: if the string is empty or not one of the four levels
        """
        return cls(raw.strip().lower())
