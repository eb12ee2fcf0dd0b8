"""Word length in characters, median duration, or a per-character unit table."""

from __future__ import annotations

import csv
import statistics
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class UnmappedCharacterError(ValueError):
    def __init__(self, char: str, form: str):
        super().__init__(f"unmapped character {char} in form {form!r}")
        self.char = char
        self.form = form


@dataclass(frozen=True)
class UnitMapping:
    """Character -> number of units (strokes, romanized letters, ...)."""

    table: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        table = {}
        for ch, units in self.table.items():
            ch = unicodedata.normalize("NFC", ch)
            if len(ch) != 1:
                raise ValueError(f"mapping key {ch!r} is not a single character")
            if int(units) != units or units < 1:
                raise ValueError(f"mapping value for {ch!r} must be a positive integer, got {units}")
            table[ch] = int(units)
        object.__setattr__(self, "table", table)

    def __contains__(self, ch: str) -> bool:
        return ch in self.table


def load_unit_mapping(lines: Iterable[str]) -> UnitMapping:
    """Read a ``char<TAB>units`` table (header row required)."""
    reader = csv.reader(lines, delimiter="\t", quoting=csv.QUOTE_NONE)
    header = next(reader, None)
    if header is None or [h.strip() for h in header[:2]] != ["char", "units"]:
        raise ValueError("unit mapping must start with header 'char\\tunits'")
    table = {}
    for rowno, row in enumerate(reader, start=2):
        if not row or not "".join(row).strip():
            continue
        if len(row) != 2:
            raise ValueError(f"row {rowno}: expected 2 columns, got {len(row)}")
        try:
            units = int(row[1])
        except ValueError:
            raise ValueError(f"row {rowno}: non-integer units {row[1]!r}") from None
        if row[0] in table:
            raise ValueError(f"row {rowno}: duplicate character {row[0]!r}")
        table[row[0]] = units
    return UnitMapping(table)


def char_length(form: str) -> int:
    # Unicode scalar values, not grapheme clusters
    return len(form)


def median_duration(samples) -> float:
    if len(samples) == 0:
        raise ValueError("median of an empty duration list")
    return float(statistics.median(samples))


def mapped_length(form: str, mapping: UnitMapping) -> int:
    total = 0
    for ch in form:
        try:
            total += mapping.table[ch]
        except KeyError:
            raise UnmappedCharacterError(ch, form) from None
    return total
