import csv
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from corpus.citations import normalize_doi
from corpus.models import AuthorityProfile, ParseDiagnostic, ParseResult, PublicationRecord, TruthLabels
from corpus.names import normalize_name

logger = logging.getLogger(__name__)

TSV_COLUMNS = ("paper_id", "doi", "year", "title", "byline", "emails", "cited_keys")
LIST_SEPARATOR = "|"
ANONYMOUS_NAMES = {"anonymous", "anon", "[anonymous]"}


class CorpusFormat(Enum):
    TSV = "tsv"
    JSON = "json"


def _split(value: str) -> list[str]:
    return [item.strip() for item in value.split(LIST_SEPARATOR) if item.strip()] if value else []


def _is_anonymous(authors: list[str]) -> bool:
    return not authors or any(author.strip().lower() in ANONYMOUS_NAMES for author in authors)


def _build_record(fields: dict[str, Any]) -> PublicationRecord | str:
    """Validate one row. Returns the record, or a reason string when the row is malformed."""
    paper_id = str(fields.get("paper_id") or "").strip()
    if not paper_id:
        return "missing paper_id"

    year = fields.get("year")
    if year in (None, ""):
        year = None
    else:
        try:
            year = int(year)
        except (TypeError, ValueError):
            return f"year {year!r} is not an integer"

    authors = [str(author).strip() for author in fields.get("authors", []) if str(author).strip()]
    for author in authors:
        try:
            normalize_name(author)
        except ValueError as e:
            return f"unusable author name: {e}"

    try:
        return PublicationRecord(
            paper_id=paper_id,
            doi=normalize_doi(fields.get("doi")),
            title=str(fields.get("title") or "").strip(),
            year=year,
            authors=authors,
            emails=[str(email).strip() for email in fields.get("emails", []) if str(email).strip()],
            cited_keys=[str(key).strip() for key in fields.get("cited_keys", []) if str(key).strip()],
        )
    except ValidationError as e:
        return f"invalid record: {e.errors()[0]['msg']}"


def _tsv_rows(path: Path):
    with path.open("r", encoding="utf-8", newline="") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            cells = line.split("\t")
            if line_no == 1 and cells[0] == TSV_COLUMNS[0]:
                continue
            if len(cells) != len(TSV_COLUMNS):
                yield line_no, f"expected {len(TSV_COLUMNS)} columns, found {len(cells)}"
                continue
            row = dict(zip(TSV_COLUMNS, cells))
            yield line_no, {
                "paper_id": row["paper_id"],
                "doi": row["doi"] or None,
                "year": row["year"],
                "title": row["title"],
                "authors": _split(row["byline"]),
                "emails": _split(row["emails"]),
                "cited_keys": _split(row["cited_keys"]),
            }


def _json_list(value: Any) -> list | str:
    """A JSON list field; a string is split on LIST_SEPARATOR like a TSV cell."""
    if value is None:
        return []
    if isinstance(value, str):
        return _split(value)
    if isinstance(value, list):
        return value
    return f"expected a list or a {LIST_SEPARATOR!r}-joined string, found {type(value).__name__}"


def _json_rows(path: Path):
    with path.open("r", encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, list):
        raise ValueError(f"{path}: expected a JSON array of records")
    for index, item in enumerate(data, start=1):
        if not isinstance(item, dict):
            yield index, "record is not a JSON object"
            continue
        lists = {
            "authors": _json_list(item.get("authors") or item.get("byline")),
            "emails": _json_list(item.get("emails")),
            "cited_keys": _json_list(item.get("cited_keys")),
        }
        bad = next((f"{field}: {value}" for field, value in lists.items() if isinstance(value, str)), None)
        if bad:
            yield index, bad
            continue
        yield index, {
            "paper_id": item.get("paper_id"),
            "doi": item.get("doi"),
            "year": item.get("year"),
            "title": item.get("title"),
            **lists,
        }


def parse_corpus(path: str | Path, format: CorpusFormat | str = CorpusFormat.TSV) -> ParseResult:
    """Read a corpus interchange file.

    Unreadable files raise. Rows with empty or anonymous bylines are skipped and
    counted; malformed rows are skipped with a diagnostic that is also logged.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Corpus file not found: {path}")
    format = CorpusFormat(format)
    rows = _tsv_rows(path) if format == CorpusFormat.TSV else _json_rows(path)

    result = ParseResult()
    seen: set[str] = set()
    for line_no, fields in rows:
        if isinstance(fields, str):
            result.diagnostics.append(ParseDiagnostic(line=line_no, reason=fields))
            continue
        record = _build_record(fields)
        if isinstance(record, str):
            result.diagnostics.append(ParseDiagnostic(line=line_no, reason=record))
            continue
        if _is_anonymous(record.authors):
            result.skipped_anonymous += 1
            continue
        if record.paper_id in seen:
            result.diagnostics.append(ParseDiagnostic(line=line_no, reason=f"duplicate paper_id {record.paper_id}"))
            continue
        seen.add(record.paper_id)
        result.records.append(record)

    for diagnostic in result.diagnostics:
        logger.warning(f"{path}:{diagnostic.line}: skipped row ({diagnostic.reason})")
    logger.info(
        f"Parsed {len(result.records)} records from {path} "
        f"({result.skipped_anonymous} anonymous, {len(result.diagnostics)} malformed)"
    )
    return result


_CELL_BREAKS = str.maketrans({"\t": " ", "\r": " ", "\n": " "})


def _cell(text: str) -> str:
    return text.translate(_CELL_BREAKS)


def _list_cell(items: list[str]) -> str:
    return LIST_SEPARATOR.join(_cell(item).replace(LIST_SEPARATOR, " ") for item in items)


def write_corpus_tsv(records: list[PublicationRecord], path: str | Path) -> None:
    """Tabs, line breaks and list separators inside fields are written as spaces."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write("\t".join(TSV_COLUMNS) + "\n")
        for record in records:
            f.write("\t".join([
                _cell(record.paper_id),
                _cell(record.doi or ""),
                "" if record.year is None else str(record.year),
                _cell(record.title),
                _list_cell(record.authors),
                _list_cell(record.emails),
                _list_cell(record.cited_keys),
            ]) + "\n")


def read_pairs_tsv(path: str | Path) -> list[tuple[str, str]]:
    """Two-column TSV (e.g. citing_key<TAB>cited_key, or instance_id<TAB>label)."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"File not found: {path}")
    pairs: list[tuple[str, str]] = []
    with path.open("r", encoding="utf-8", newline="") as f:
        for line_no, cells in enumerate(csv.reader(f, delimiter="\t"), start=1):
            if not cells or not any(cell.strip() for cell in cells):
                continue
            if len(cells) < 2:
                logger.warning(f"{path}:{line_no}: skipped row (expected 2 columns)")
                continue
            pairs.append((cells[0].strip(), cells[1].strip()))
    return pairs


def write_pairs_tsv(pairs: list[tuple[str, str]], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        for left, right in pairs:
            f.write(f"{left}\t{right}\n")


def read_supplemental_citations(path: str | Path) -> list[tuple[str, str]]:
    return read_pairs_tsv(path)


def read_truth_labels(path: str | Path) -> TruthLabels:
    return TruthLabels(labels=dict(read_pairs_tsv(path)))


def write_truth_labels(truth: TruthLabels, path: str | Path) -> None:
    write_pairs_tsv(sorted(truth.labels.items()), path)


def read_authority_profiles(path: str | Path) -> list[AuthorityProfile]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Authority profile file not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        data = json.load(f)
    return [AuthorityProfile.model_validate(item) for item in data]
