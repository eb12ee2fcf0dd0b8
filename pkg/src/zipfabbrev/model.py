"""Shared data model: word types, lexicons and character inventories."""

from __future__ import annotations

import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Tuple, Union

import numpy as np

from zipfabbrev.lengths import UnitMapping, char_length, mapped_length, median_duration


class Unit(str, Enum):
    CHARACTERS = "chars"
    DURATION_SECONDS = "duration"
    MAPPED = "mapped"


def normalize_form(form: str) -> str:
    return unicodedata.normalize("NFC", form).lower()


@dataclass(frozen=True)
class TypeRecord:
    form: str
    frequency: int
    length: float
    duration_samples: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.frequency < 1:
            raise ValueError(f"type {self.form!r}: frequency must be >= 1, got {self.frequency}")
        if not self.length >= 0:
            raise ValueError(f"type {self.form!r}: length must be >= 0, got {self.length}")


@dataclass(frozen=True)
class Lexicon:
    """All word types of one language measured in one unit.

    ``records`` is kept sorted by form so that two lexicons built from the same
    tokens in any order compare equal.
    """

    records: Tuple[TypeRecord, ...]
    unit: Unit
    language: str = ""
    family: str = ""
    script: str = ""

    def __post_init__(self):
        records = tuple(sorted(self.records, key=lambda r: r.form))
        for a, b in zip(records, records[1:]):
            if a.form == b.form:
                raise ValueError(f"duplicate form {a.form!r} in lexicon")
        if self.unit is Unit.CHARACTERS:
            for r in records:
                if r.length != char_length(r.form):
                    raise ValueError(f"type {r.form!r}: length {r.length} != character count")
        object.__setattr__(self, "records", records)
        object.__setattr__(self, "unit", Unit(self.unit))

    @property
    def n(self) -> int:
        return len(self.records)

    @property
    def T(self) -> int:
        return sum(r.frequency for r in self.records)

    @property
    def forms(self) -> list:
        return [r.form for r in self.records]

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([r.frequency for r in self.records], dtype=np.int64)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([r.length for r in self.records], dtype=float)

    @property
    def probabilities(self) -> np.ndarray:
        return self.frequencies / self.T

    def subset(self, keep) -> "Lexicon":
        """Lexicon restricted to the records for which ``keep(record)`` is true."""
        return Lexicon(
            tuple(r for r in self.records if keep(r)),
            self.unit,
            self.language,
            self.family,
            self.script,
        )

    def with_metadata(self, language="", family="", script="") -> "Lexicon":
        return Lexicon(self.records, self.unit, language, family, script)


@dataclass(frozen=True)
class CharacterInventory:
    entries: Mapping[str, int]
    working_alphabet: Optional[frozenset] = None

    def __post_init__(self):
        if self.working_alphabet is not None:
            alphabet = frozenset(self.working_alphabet)
            if not alphabet:
                raise ValueError("working alphabet must be nonempty")
            if not alphabet <= self.entries.keys():
                raise ValueError("working alphabet contains characters absent from the inventory")
            object.__setattr__(self, "working_alphabet", alphabet)

    @property
    def observed_size(self) -> int:
        return len(self.entries)

    @property
    def A(self) -> int:
        return len(self.entries)

    def total(self) -> int:
        return sum(self.entries.values())


Token = Union[str, Tuple[str, Optional[float]]]


def _split_token(token: Token):
    if isinstance(token, str):
        return token, None
    form, duration = token
    return form, duration


def build_lexicon(
    tokens: Iterable[Token],
    unit: Unit = Unit.CHARACTERS,
    mapping: Optional[UnitMapping] = None,
    language: str = "",
    family: str = "",
    script: str = "",
) -> Lexicon:
    """Aggregate filtered tokens into word types.

    Tokens are either plain strings or ``(form, duration_seconds)`` pairs.
    Forms are compared after NFC normalization and lowercasing.
    """
    unit = Unit(unit)
    counts: Counter = Counter()
    durations = defaultdict(list)
    for token in tokens:
        form, duration = _split_token(token)
        form = normalize_form(form)
        counts[form] += 1
        if unit is Unit.DURATION_SECONDS:
            if duration is None:
                raise ValueError(f"missing duration for form {form!r}")
            if duration < 0:
                raise ValueError(f"negative duration for form {form!r}")
            durations[form].append(float(duration))
    if not counts:
        raise ValueError("empty corpus")
    if unit is Unit.MAPPED and mapping is None:
        raise ValueError("mapped unit requires a UnitMapping")

    records = []
    for form, freq in counts.items():
        if unit is Unit.CHARACTERS:
            records.append(TypeRecord(form, freq, char_length(form)))
        elif unit is Unit.MAPPED:
            records.append(TypeRecord(form, freq, mapped_length(form, mapping)))
        else:
            samples = tuple(sorted(durations[form]))
            records.append(TypeRecord(form, freq, median_duration(samples), samples))
    return Lexicon(tuple(records), unit, language, family, script)


def character_inventory(lexicon: Lexicon) -> CharacterInventory:
    """Token-weighted character frequencies over the written forms of a lexicon."""
    if lexicon.n == 0:
        raise ValueError("character inventory of an empty lexicon")
    entries: Counter = Counter()
    for r in lexicon.records:
        for ch, k in Counter(r.form).items():
            entries[ch] += k * r.frequency
    return CharacterInventory(dict(entries))
