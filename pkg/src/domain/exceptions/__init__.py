"""Domain exceptions - Business rule violations."""

from domain.exceptions.base import (
    CheckpointError,
    ConfigError,
    ContractViolation,
    DataError,
    DegenerateCorpusError,
    DomainError,
    EmptyCorpusError,
    EmptyFeatureError,
    EncodingError,
    FormatError,
    ImputationError,
    LexError,
    NumericError,
    ParseError,
    PathError,
    SchemaError,
    ShapeError,
    StratificationError,
    VersioningError,
)

__all__ = [
    "DomainError",
    "ConfigError",
    "ContractViolation",
    "PathError",
    "SchemaError",
    "ParseError",
    "FormatError",
    "DataError",
    "EmptyCorpusError",
    "DegenerateCorpusError",
    "StratificationError",
    "EmptyFeatureError",
    "ImputationError",
    "EncodingError",
    "LexError",
    "ShapeError",
    "NumericError",
    "VersioningError",
    "CheckpointError",
]
