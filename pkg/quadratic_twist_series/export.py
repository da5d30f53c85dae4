"""Utilities for exporting reports to JSON and CSV, and for reading JSON reports back"""

import csv
import json
import logging
import sys
import types
import typing
from typing import Any, Optional, Sequence

from quadratic_twist_series.exceptions import OutputInvalidException

logger = logging.getLogger(__name__)


def report_to_dict(value: Any) -> Any:
    """Converts (nested) namedtuple reports into plain JSON-ready values"""
    if hasattr(value, "_asdict"):
        return {name: report_to_dict(field) for name, field in value._asdict().items()}
    if isinstance(value, dict):
        return {key: report_to_dict(field) for key, field in value.items()}
    if isinstance(value, (list, tuple)):
        return [report_to_dict(item) for item in value]
    return value


def _revive(value: Any, hint: Any) -> Any:
    if value is None or hint is Any:
        return value
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin in (typing.Union, types.UnionType):
        for option in args:
            if option is not type(None):
                return _revive(value, option)
    if origin is tuple:
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_revive(item, args[0]) for item in value)
        return tuple(_revive(item, arg) for item, arg in zip(value, args))
    if origin is dict:
        key_type, value_type = args
        return {
            (int(key) if key_type is int else key): _revive(item, value_type)
            for key, item in value.items()
        }
    if isinstance(hint, type) and issubclass(hint, tuple) and hasattr(hint, "_fields"):
        hints = typing.get_type_hints(hint)
        return hint(**{name: _revive(value[name], hints[name]) for name in value})
    return value


def report_from_dict(data: dict, record_type: type) -> Any:
    """Inverse of report_to_dict for the namedtuple `record_type`: lists become tuples
    and integer dictionary keys written as strings are restored

    Examples:
        >>> from quadratic_twist_series.objects import RootSet
        >>> report_from_dict({"d": 2, "residues": [0, 1, 3]}, RootSet)
        RootSet(d=2, residues=(0, 1, 3))
    """
    return _revive(data, record_type)


def report_to_json(report: Any) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def write_report_json(report: Any, output_filepath: Optional[str] = None) -> None:
    """Writes a report as JSON to a file, or to standard output when no path is given"""
    text = report_to_json(report)
    if output_filepath is None:
        sys.stdout.write(text + "\n")
        return
    with open(output_filepath, "w", encoding="utf-8") as file:
        file.write(text + "\n")
    logger.info("Wrote report to '%s'", output_filepath)


def write_rows_to_csv(
    rows: Sequence[dict],
    fieldnames: Sequence[str],
    output_filepath: Optional[str] = None,
    csv_sep_char: str = ",",
) -> None:
    """Writes report rows into a single CSV file (or standard output) with a fixed column order"""
    for row in rows:
        for field_name, field_value in row.items():
            if csv_sep_char in str(field_value):
                raise OutputInvalidException(
                    f"Cannot produce valid output because found CSV-separator character '{csv_sep_char}' in field '{field_name}' of row {row}"
                )
    if output_filepath is None:
        _write_csv(sys.stdout, rows, fieldnames, csv_sep_char)
        return
    with open(output_filepath, "w", encoding="utf-8", newline="") as file:
        _write_csv(file, rows, fieldnames, csv_sep_char)
    logger.info("Wrote %s rows to '%s'", f"{len(rows):,}", output_filepath)


def _write_csv(file, rows: Sequence[dict], fieldnames: Sequence[str], csv_sep_char: str) -> None:
    csv_writer = csv.DictWriter(
        file,
        fieldnames=list(fieldnames),
        delimiter=csv_sep_char,
        quotechar='"',
        quoting=csv.QUOTE_MINIMAL,
    )
    csv_writer.writeheader()
    for row in rows:
        csv_writer.writerow(row)
