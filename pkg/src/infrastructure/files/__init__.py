"""File infrastructure - CSV inputs and run-directory artifacts.

Uses pandas for every CSV read and write; writes are atomic.
"""

from infrastructure.files.atomic import write_text_atomic
from infrastructure.files.ck_columns import CLASS_METRICS, METHOD_METRICS, metric_names
from infrastructure.files.csv_source import CsvDatasetSource
from infrastructure.files.run_directory import RunDirectory

__all__ = [
    "CsvDatasetSource",
    "RunDirectory",
    "write_text_atomic",
    "CLASS_METRICS",
    "METHOD_METRICS",
    "metric_names",
]
