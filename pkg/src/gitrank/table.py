"""The repositories-by-measures table and its on-disk formats.

One row per repository, fourteen measure columns, cells either a finite
float or missing. CSV is the primary format (empty cell = missing, floats
written with repr-precision so values round-trip exactly); a JSON mirror
uses null for missing.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .analyzer import RepoCodeSummary
from .forge import RateMeasures

MEASURE_COLUMNS = (
    "cc", "sty", "sl", "sm", "sh", "mi",
    "c2y", "c1y", "c6m", "c1m", "cm", "ss", "str", "fr",
)

CSV_HEADER = ("repo",) + MEASURE_COLUMNS

#: Measures that may be negative (MI is unclamped); everything else is a
#: count, mean of counts, or rate, hence >= 0.
_SIGNED_COLUMNS = frozenset({"mi"})


class TableFormatError(ValueError):
    """Malformed table file; messages carry row and column context."""


@dataclass(frozen=True)
class RepoMeasures:
    """One measured repository; None marks a measure that has no value."""

    repo_id: str
    cc: float | None = None
    sty: float | None = None
    sl: float | None = None
    sm: float | None = None
    sh: float | None = None
    mi: float | None = None
    c2y: float | None = None
    c1y: float | None = None
    c6m: float | None = None
    c1m: float | None = None
    cm: float | None = None
    ss: float | None = None
    str: float | None = None
    fr: float | None = None

    def __post_init__(self) -> None:
        if not self.repo_id or not isinstance(self.repo_id, str):
            raise ValueError(f"repo_id must be a non-empty string, got {self.repo_id!r}")
        for column in MEASURE_COLUMNS:
            value = getattr(self, column)
            if value is None:
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{self.repo_id}: {column} must be a number or None")
            if not math.isfinite(value):
                raise ValueError(f"{self.repo_id}: {column} must be finite, got {value!r}")
            if column == "cc" and value < 1:
                raise ValueError(f"{self.repo_id}: cc must be >= 1, got {value!r}")
            if column not in _SIGNED_COLUMNS and value < 0:
                raise ValueError(f"{self.repo_id}: {column} must be >= 0, got {value!r}")

    def get(self, column: str) -> float | None:
        if column not in MEASURE_COLUMNS:
            raise KeyError(column)
        return getattr(self, column)

    def as_dict(self) -> dict:
        return {"repo": self.repo_id, **{c: getattr(self, c) for c in MEASURE_COLUMNS}}


def build_row(summary: RepoCodeSummary, rates: RateMeasures) -> RepoMeasures:
    """Join the static-analysis measures with the forge-derived rates."""
    if summary.repo_id != rates.repo_id:
        raise ValueError(f"repo_id mismatch: {summary.repo_id!r} vs {rates.repo_id!r}")
    return RepoMeasures(
        repo_id=summary.repo_id,
        cc=summary.cc,
        sty=summary.sty,
        sl=summary.sl,
        sm=summary.sm,
        sh=summary.sh,
        mi=summary.mi,
        c2y=rates.c2y,
        c1y=rates.c1y,
        c6m=rates.c6m,
        c1m=rates.c1m,
        cm=rates.cm,
        ss=rates.ss,
        str=rates.str,
        fr=rates.fr,
    )


@dataclass(frozen=True)
class MeasureTable:
    rows: tuple[RepoMeasures, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for row in self.rows:
            if row.repo_id in seen:
                raise ValueError(f"duplicate repository id: {row.repo_id!r}")
            seen.add(row.repo_id)

    @classmethod
    def from_rows(cls, rows: Iterable[RepoMeasures]) -> "MeasureTable":
        """Build with rows sorted by repository id."""
        return cls(tuple(sorted(rows, key=lambda r: r.repo_id)))

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[float | None]:
        return [row.get(name) for row in self.rows]

    def repo_ids(self) -> list[str]:
        return [row.repo_id for row in self.rows]


def _format_cell(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def _parse_cell(text: str, row: int, column: str) -> float | None:
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        raise TableFormatError(f"row {row}, column {column!r}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise TableFormatError(f"row {row}, column {column!r}: not finite: {text!r}")
    return value


def save_table(table: MeasureTable, path: str | Path) -> None:
    """Write CSV with the fixed header; missing cells are left empty."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in table.rows:
            writer.writerow(
                [row.repo_id] + [_format_cell(row.get(c)) for c in MEASURE_COLUMNS]
            )


def load_table(path: str | Path) -> MeasureTable:
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise TableFormatError(f"{path}: empty file, expected header row") from None
        if tuple(header) != CSV_HEADER:
            raise TableFormatError(
                f"{path}: bad header {header!r}, expected {','.join(CSV_HEADER)}"
            )
        rows = []
        for index, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(CSV_HEADER):
                raise TableFormatError(
                    f"{path}: row {index}: expected {len(CSV_HEADER)} cells, got {len(record)}"
                )
            repo_id = record[0]
            if not repo_id:
                raise TableFormatError(f"{path}: row {index}: empty repo id")
            cells = {
                column: _parse_cell(record[i + 1], index, column)
                for i, column in enumerate(MEASURE_COLUMNS)
            }
            try:
                rows.append(RepoMeasures(repo_id=repo_id, **cells))
            except ValueError as exc:
                raise TableFormatError(f"{path}: row {index}: {exc}") from exc
    try:
        return MeasureTable(tuple(rows))
    except ValueError as exc:
        raise TableFormatError(f"{path}: {exc}") from exc


def save_table_json(table: MeasureTable, path: str | Path) -> None:
    document = {"columns": list(MEASURE_COLUMNS), "rows": [r.as_dict() for r in table.rows]}
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(document, handle, indent=2)
        handle.write("\n")


def load_table_json(path: str | Path) -> MeasureTable:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(raw, Mapping) or not isinstance(raw.get("rows"), list):
        raise TableFormatError(f"{path}: expected an object with a 'rows' array")
    rows = []
    for index, entry in enumerate(raw["rows"]):
        if not isinstance(entry, Mapping) or "repo" not in entry:
            raise TableFormatError(f"{path}: rows[{index}]: expected an object with 'repo'")
        cells = {}
        for column in MEASURE_COLUMNS:
            value = entry.get(column)
            if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise TableFormatError(f"{path}: rows[{index}]: {column} must be a number or null")
            cells[column] = None if value is None else float(value)
        try:
            rows.append(RepoMeasures(repo_id=entry["repo"], **cells))
        except ValueError as exc:
            raise TableFormatError(f"{path}: rows[{index}]: {exc}") from exc
    try:
        return MeasureTable(tuple(rows))
    except ValueError as exc:
        raise TableFormatError(f"{path}: {exc}") from exc
