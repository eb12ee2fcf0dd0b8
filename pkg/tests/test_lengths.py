import io
import unicodedata

import pytest
from hypothesis import given, strategies as st

from zipfabbrev.lengths import (
    UnitMapping,
    UnmappedCharacterError,
    char_length,
    load_unit_mapping,
    mapped_length,
    median_duration,
)


@pytest.mark.parametrize("form, n", [("can't", 5), ("", 0), (unicodedata.normalize("NFC", "à"), 1)])
def test_char_length(form, n):
    assert char_length(form) == n


@pytest.mark.parametrize("samples, m", [([0.2, 0.9, 0.3], 0.3), ([0.2, 0.4], 0.3), ([0.5], 0.5)])
def test_median_duration(samples, m):
    assert median_duration(samples) == pytest.approx(m, abs=1e-15)


def test_median_empty():
    with pytest.raises(ValueError):
        median_duration([])


def test_mapped_length():
    assert mapped_length("ab", UnitMapping({"a": 3, "b": 4})) == 7
    assert mapped_length("a", UnitMapping({"a": 1})) == 1
    with pytest.raises(UnmappedCharacterError, match="unmapped character X") as exc:
        mapped_length("aX", UnitMapping({"a": 3}))
    assert exc.value.form == "aX"


def test_mapping_values_positive():
    with pytest.raises(ValueError):
        UnitMapping({"a": 0})


def test_load_unit_mapping():
    text = "char\tunits\n日\t4\n本\t5\n"
    mapping = load_unit_mapping(io.StringIO(text))
    assert mapped_length("日本", mapping) == 9
    with pytest.raises(ValueError, match="header"):
        load_unit_mapping(io.StringIO("x\ty\na\t1\n"))


nfc_text = st.text(max_size=10).map(lambda s: unicodedata.normalize("NFC", s))


@given(nfc_text, nfc_text)
def test_char_length_additive(u, v):
    assert char_length(u + v) == char_length(u) + char_length(v)


@given(st.lists(st.floats(0, 100), min_size=1, max_size=30), st.randoms())
def test_median_permutation_invariant_and_bounded(samples, rnd):
    m = median_duration(samples)
    shuffled = list(samples)
    rnd.shuffle(shuffled)
    assert median_duration(shuffled) == m
    assert min(samples) <= m <= max(samples)


table = UnitMapping({c: i + 1 for i, c in enumerate("abcdef")})


@given(st.text(alphabet="abcdef"), st.text(alphabet="abcdef"))
def test_mapped_length_additive(u, v):
    assert mapped_length(u + v, table) == mapped_length(u, table) + mapped_length(v, table)
