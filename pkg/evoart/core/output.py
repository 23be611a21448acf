import csv
import re
from typing import Any, Iterable, List, Sequence

from evoart.core.types import CanvasDims
from evoart.exceptions import ImageIOError, OutputError

RAW_HEADER = ["axis_value", "repetition", "generation", "absolute_score", "relative_percent"]
AGGREGATE_HEADER = [
    "axis_value",
    "generation",
    "mean_absolute",
    "sd_absolute",
    "mean_relative_percent",
]


def pluralise(word: str, number: int) -> str:
    """1 banana, 2 bananas"""
    return "%d %s%s" % (number, word, "" if number == 1 else "s")


def truncate_list(items: List[Any], max_entries: int = 10) -> str:
    """Print a list, possibly truncating it to the specified number of entries"""
    return ",".join(str(i) for i in items[:max_entries]) + (
        ", ..." if len(items) > max_entries else ""
    )


def pretty_duration(seconds: float) -> str:
    """Converts a duration in seconds to its string representation (e.g. 3725 -> 1h02m05s)"""
    seconds = int(round(seconds))
    hours, rest = divmod(seconds, 3600)
    minutes, seconds = divmod(rest, 60)
    if hours:
        return "%dh%02dm%02ds" % (hours, minutes, seconds)
    if minutes:
        return "%dm%02ds" % (minutes, seconds)
    return "%ds" % seconds


def format_decimal(value: float) -> str:
    """Two decimals, the precision used for percents and standard deviations in CSV files."""
    return "%.2f" % value


_dims = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def parse_dims(value: str) -> CanvasDims:
    """Parse a WIDTHxHEIGHT string, e.g. 200x200."""
    match = _dims.match(value)
    if not match:
        raise ValueError("Invalid dimensions %r, expected WIDTHxHEIGHT!" % value)
    dims = CanvasDims(int(match.group(1)), int(match.group(2)))
    if dims.width < 1 or dims.height < 1:
        raise ValueError("Dimensions must be positive, got %s!" % value)
    return dims


def write_rows(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise OutputError(path, "can't write CSV file: %s" % e.strerror) from e


def read_rows(path: str, header: Sequence[str]) -> List[List[str]]:
    """Read a CSV file back, checking its header."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            rows = list(reader)
    except OSError as e:
        raise ImageIOError(path, "can't read CSV file: %s" % e.strerror) from e

    if not rows or rows[0] != list(header):
        raise ImageIOError(
            path, "unexpected CSV header, expected %s" % truncate_list(list(header))
        )
    return rows[1:]
