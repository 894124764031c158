"""Metric names produced by the CK tool at class and method level."""

from domain.enums import ColumnKind, MetricLevel

CLASS_METRICS: tuple[str, ...] = (
    "cbo",
    "dit",
    "wmc",
    "tcc",
    "lcc",
    "lcom",
    "loc",
    "nosi",
    "rfc",
    "abstractMethodsQty",
    "anonymousClassesQty",
    "assignmentsQty",
    "comparisonsQty",
    "defaultFieldsQty",
    "defaultMethodsQty",
    "finalFieldsQty",
    "finalMethodsQty",
    "innerClassesQty",
    "lambdasQty",
    "logStatementsQty",
    "loopQty",
    "mathOperationsQty",
    "maxNestedBlocksQty",
    "modifiers",
    "privateFieldsQty",
    "privateMethodsQty",
    "protectedFieldsQty",
    "protectedMethodsQty",
    "publicFieldsQty",
    "publicMethodsQty",
    "returnQty",
    "staticFieldsQty",
    "staticMethodsQty",
    "stringLiteralsQty",
    "synchronizedFieldsQty",
    "synchronizedMethodsQty",
    "totalFieldsQty",
    "totalMethodsQty",
    "tryCatchQty",
    "visibleFieldsQty",
    "numbersQty",
    "parenthesizedExpsQty",
    "uniqueWordsQty",
    "variablesQty",
)

METHOD_METRICS: tuple[str, ...] = (
    "loc",
    "cbo",
    "wmc",
    "rfc",
    "modifiers",
    "constructor",
    "logStatementsQty",
    "returnsQty",
    "variablesQty",
    "parametersQty",
    "methodsInvokedQty",
    "methodsInvokedLocalQty",
    "methodsInvokedIndirectLocalQty",
    "loopQty",
    "comparisonsQty",
    "tryCatchQty",
    "parenthesizedExpsQty",
    "stringLiteralsQty",
    "numbersQty",
    "assignmentsQty",
    "mathOperationsQty",
    "maxNestedBlocksQty",
    "anonymousClassesQty",
    "innerClassesQty",
    "lambdasQty",
    "uniqueWordsQty",
)

CATEGORICAL_METRICS = frozenset({"modifiers", "constructor"})

# Columns that identify a row rather than measure it.
IDENTITY_COLUMNS = frozenset({"sample_id", "file", "class", "method", "type"})


def metric_names(level: MetricLevel) -> tuple[str, ...]:
    return CLASS_METRICS if level is MetricLevel.CLASS else METHOD_METRICS


def column_kind(name: str) -> ColumnKind:
    return ColumnKind.CATEGORICAL if name in CATEGORICAL_METRICS else ColumnKind.NUMERIC
