"""CSV output for result tables."""

import csv
from pathlib import Path
from typing import Any, List, Union

from experiments.models import ResultTable
from logs.logger import get_logger
from utils.constants import CSV_SIGNIFICANT_DIGITS
from utils.exceptions import OutputError
from utils.helpers import format_significant

logger = get_logger(__name__)


def _format_cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if hasattr(value, "value") and isinstance(value.value, str):
        return value.value
    return format_significant(value, digits)


def emit_csv(table: ResultTable, path: Union[str, Path], digits: int = CSV_SIGNIFICANT_DIGITS) -> Path:
    """Write a table as comma-separated text.

    The header holds 'name [unit]' per column in table order. Floats are
    written with ``digits`` significant digits, so identical tables give
    identical bytes.

    Args:
        table: Results to write
        path: Destination file; parent directories are created
        digits: Significant digits for floating-point cells

    Returns:
        The path written

    Raises:
        OutputError: if the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow([column.header for column in table.columns])
            for row in table.rows:
                writer.writerow([_format_cell(value, digits) for value in row])
    except OSError as e:
        raise OutputError(str(path), e.strerror or str(e)) from e
    logger.info(f"Wrote {len(table)} rows to {path}")
    return path


def read_csv(path: Union[str, Path]) -> List[List[str]]:
    """Raw rows of a CSV file, header first."""
    with Path(path).open(newline="", encoding="utf-8") as handle:
        return [row for row in csv.reader(handle)]


def trace_path(path: Union[str, Path]) -> Path:
    """Companion file for iteration traces: results.csv -> results.trace.csv."""
    path = Path(path)
    return path.with_name(f"{path.stem}.trace{path.suffix or '.csv'}")
