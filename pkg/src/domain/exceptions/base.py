"""Base domain exceptions."""


class DomainError(Exception):
    """Base exception for all domain errors."""

    pass


class ConfigError(DomainError):
    """Invalid configuration value or combination."""

    pass


class ContractViolation(DomainError):
    """A precondition of a domain operation was not met."""

    pass


class PathError(DomainError):
    """A required input file or directory does not exist."""

    pass


class SchemaError(DomainError):
    """Expected column or feature is missing or mismatched."""

    pass


class ParseError(DomainError):
    """A review row could not be decoded."""

    def __init__(self, message: str, row: int | None = None) -> None:
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class FormatError(DomainError):
    """Input file does not follow its documented layout."""

    pass


class DataError(DomainError):
    """Values are missing, non-finite, or reference unknown samples."""

    pass


class EmptyCorpusError(DomainError):
    """Labeling produced no usable sample."""

    pass


class DegenerateCorpusError(DomainError):
    """Corpus lacks one of the two classes."""

    pass


class StratificationError(DomainError):
    """A class is too small to be split as requested."""

    pass


class EmptyFeatureError(DomainError):
    """Column pruning left no feature."""

    pass


class ImputationError(DomainError):
    """Not enough donor rows to impute a missing cell."""

    pass


class EncodingError(DomainError):
    """A categorical value was not seen when the encoder was fit."""

    pass


class LexError(DomainError):
    """Java source could not be tokenized."""

    def __init__(self, message: str, offset: int, line: int, column: int) -> None:
        self.message = message
        self.offset = offset
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column} (offset {offset})")


class ShapeError(DomainError):
    """Tensor shapes do not fit the operation."""

    pass


class NumericError(DomainError):
    """Training produced a non-finite loss or gradient."""

    pass


class VersioningError(DomainError):
    """Checkpoint is unreadable or was written for another configuration."""

    pass


class CheckpointError(DomainError):
    """Checkpoint lacks a tensor the model needs."""

    pass
