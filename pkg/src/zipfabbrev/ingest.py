"""Streaming readers for CoNLL-U treebanks, word alignments and type lists."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, Optional, TextIO

from zipfabbrev.model import Lexicon, TypeRecord, Unit, normalize_form

UNKNOWN = "<unk>"


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"{message}, row {line}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class RawToken:
    form: str
    pos: Optional[str] = None
    duration_s: Optional[float] = None
    flags: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "flags", frozenset(self.flags))
        if not self.form and "is_null" not in self.flags:
            raise ValueError("empty form on a token not flagged is_null")
        if self.duration_s is not None and self.duration_s < 0:
            raise ValueError(f"negative duration {self.duration_s}")

    @property
    def is_unknown(self) -> bool:
        return "is_unknown" in self.flags

    @property
    def is_null(self) -> bool:
        return "is_null" in self.flags


def _lines(stream) -> Iterable[str]:
    if isinstance(stream, str):
        return io.StringIO(stream)
    return stream


def parse_conllu(stream: Iterable[str] | str) -> Iterator[RawToken]:
    """Yield one token per syntactic word line.

    Multiword-token ranges (``3-4``) and empty nodes (``5.1``) are skipped;
    the words they cover appear on their own lines.
    """
    for lineno, line in enumerate(_lines(stream), start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cols)} at line {lineno}")
        tid = cols[0]
        if "-" in tid or "." in tid:
            continue
        try:
            int(tid)
        except ValueError:
            raise ParseError(f"non-integer token id {tid!r} at line {lineno}") from None
        upos = cols[3] if cols[3] != "_" else None
        yield RawToken(cols[1], pos=upos)


def parse_alignment(stream: Iterable[str] | str) -> Iterator[RawToken]:
    """Yield tokens from a ``utt<TAB>form<TAB>start<TAB>end`` alignment table.

    Row numbers in errors count the header as row 1.
    """
    lines = iter(_lines(stream))
    header = next(lines, None)
    if header is None:
        return
    for rowno, line in enumerate(lines, start=2):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ParseError(f"expected 4 columns, got {len(cols)}", rowno)
        _, form, start, end = cols
        try:
            start_s, end_s = float(start), float(end)
        except ValueError:
            raise ParseError(f"non-numeric time {start!r}/{end!r}", rowno) from None
        if end_s < start_s:
            raise ParseError("end before start", rowno)
        flags = set()
        if form == UNKNOWN:
            flags.add("is_unknown")
        if not form:
            flags.add("is_null")
        yield RawToken(form, duration_s=end_s - start_s, flags=flags)


def parse_typelist(stream: Iterable[str] | str, **metadata) -> Lexicon:
    """Read a pre-aggregated ``form,frequency,length`` table into a Lexicon.

    The delimiter (comma or tab) is taken from the header line. Lengths are
    used as given, so the lexicon unit is ``mapped``.
    """
    lines = iter(_lines(stream))
    header = next(lines, None)
    if header is None:
        raise ParseError("empty type list")
    header = header.rstrip("\r\n")
    delim = "\t" if "\t" in header else ","
    if [h.strip() for h in header.split(delim)] != ["form", "frequency", "length"]:
        raise ParseError(f"bad type-list header {header!r}", 1)

    records = []
    seen = set()
    for rowno, line in enumerate(lines, start=2):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        # rsplit so that a comma inside the form survives
        cols = line.rsplit(delim, 2)
        if len(cols) != 3:
            raise ParseError("expected 3 columns", rowno)
        form = normalize_form(cols[0])
        try:
            freq = int(cols[1])
        except ValueError:
            raise ParseError(f"non-integer frequency {cols[1]!r}", rowno) from None
        try:
            length = float(cols[2])
        except ValueError:
            raise ParseError(f"non-numeric length {cols[2]!r}", rowno) from None
        if form in seen:
            raise ParseError(f"duplicate form {form}", rowno)
        if freq < 1:
            raise ParseError(f"nonpositive frequency {freq}", rowno)
        if not length >= 0:
            raise ParseError(f"negative length {length}", rowno)
        seen.add(form)
        records.append(TypeRecord(form, freq, length))
    if not records:
        raise ParseError("empty type list")
    return Lexicon(tuple(records), Unit.MAPPED, **metadata)


def write_typelist(lexicon: Lexicon, out: TextIO, delimiter: str = ",") -> None:
    out.write(delimiter.join(["form", "frequency", "length"]) + "\n")
    for r in lexicon.records:
        out.write(f"{r.form}{delimiter}{r.frequency}{delimiter}{r.length!r}\n")
