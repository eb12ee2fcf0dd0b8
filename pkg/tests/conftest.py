import numpy as np
import pytest

from zipfabbrev.model import Lexicon, TypeRecord, Unit

ACCEPTANCE_LINES = []


def make_lexicon(freqs, lengths, unit=Unit.MAPPED):
    records = tuple(TypeRecord(f"w{i:05d}", int(f), float(l)) for i, (f, l) in enumerate(zip(freqs, lengths)))
    return Lexicon(records, unit)


def random_lexicon(rng, n, fmax=100, lmax=10, integer_lengths=None):
    freqs = rng.integers(1, fmax + 1, n)
    if integer_lengths is None:
        integer_lengths = rng.random() < 0.5
    if integer_lengths:
        lengths = rng.integers(0, lmax + 1, n).astype(float)
    else:
        lengths = rng.uniform(0, lmax, n)
    return make_lexicon(freqs, lengths)


@pytest.fixture
def table1():
    # f = 100, 20, 5 and l = 2, 1, 3
    return make_lexicon([100, 20, 5], [2, 1, 3])


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
