import csv
import json
from enum import Enum
from pathlib import Path
from typing import Any, Iterable

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table


class ReportFormat(Enum):
    CSV = "csv"
    TSV = "tsv"
    JSON = "json"


def _rows_to_dicts(rows: Iterable[BaseModel | dict[str, Any]]) -> list[dict[str, Any]]:
    """Flatten report rows (models or dicts) into plain {column: value} dicts."""
    flattened = []
    for row in rows:
        data = row.model_dump(mode="json") if isinstance(row, BaseModel) else dict(row)
        flattened.append({key: "|".join(map(str, value)) if isinstance(value, list) else value for key, value in data.items()})
    return flattened


def _cell(value: Any) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_report(rows: Iterable[BaseModel | dict[str, Any]], path: str | Path, format: ReportFormat, config_hash: str) -> Path:
    """Write rows as CSV/TSV (one config_hash column) or JSON ({"config_hash", "rows"}); returns the written path."""
    rows = _rows_to_dicts(rows)
    path = Path(path).with_suffix(f".{format.value}")
    path.parent.mkdir(parents=True, exist_ok=True)
    if format == ReportFormat.JSON:
        with path.open("w", encoding="utf-8") as f:
            json.dump({"config_hash": config_hash, "rows": rows}, f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    columns = list(dict.fromkeys(key for row in rows for key in row)) + ["config_hash"]
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, delimiter="," if format == ReportFormat.CSV else "\t", lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns[:-1]] + [config_hash])
    return path


def print_table(title: str, rows: Iterable[BaseModel | dict[str, Any]], console: Console | None = None) -> None:
    rows = _rows_to_dicts(rows)
    table = Table(title=title)
    columns = list(dict.fromkeys(key for row in rows for key in row))
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_cell(row.get(column)) for column in columns))
    (console or Console(stderr=True)).print(table)
