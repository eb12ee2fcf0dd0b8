"""Token filters: the mandatory elementary filter and the unsupervised alphabet filter.

The alphabet filter clusters characters by log token frequency into two groups
with an exact (dynamic programming) 1-D k-means and keeps only word types
spelled entirely with characters from the high-frequency group.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Sequence, TextIO

import numpy as np

from zipfabbrev.ingest import RawToken
from zipfabbrev.model import CharacterInventory, Lexicon, normalize_form

log = logging.getLogger(__name__)

_DIGITS = re.compile(r"[0-9]")

# relative slack used to treat two split costs as equal
TIE_RTOL = 1e-9


class DegenerateClusteringError(ValueError):
    pass


class EmptyFilterResultError(ValueError):
    pass


@dataclass(frozen=True)
class FilterConfig:
    drop_pos: FrozenSet[str] = frozenset({"PUNCT"})
    drop_digit_tokens: bool = True
    lowercase: bool = True
    optional_filter: bool = True
    k: int = 2
    cjk_mode: bool = False

    def __post_init__(self):
        object.__setattr__(self, "drop_pos", frozenset(self.drop_pos))
        if self.k != 2:
            raise ValueError(f"alphabet filter uses k=2 clusters, got k={self.k}")


@dataclass(frozen=True)
class ClusterSplit:
    """Partition of 1-D values into clusters contiguous in sorted order.

    ``boundary_index`` is the size of the low cluster. Index sets refer to
    positions in the input list.
    """

    boundary_index: int
    low_cluster: FrozenSet[int]
    high_cluster: FrozenSet[int]
    wcss: float
    boundaries: tuple = ()


def mandatory_filter(tokens: Iterable[RawToken], config: FilterConfig = FilterConfig()) -> Iterator[RawToken]:
    for tok in tokens:
        if tok.is_unknown or tok.is_null or not tok.form:
            continue
        if tok.pos is not None and tok.pos in config.drop_pos:
            continue
        if config.drop_digit_tokens and _DIGITS.search(tok.form):
            continue
        form = normalize_form(tok.form) if config.lowercase else tok.form
        if form == tok.form:
            yield tok
        else:
            yield RawToken(form, tok.pos, tok.duration_s, tok.flags)


def _segment_costs(x: np.ndarray):
    """Return cost(i, j): within-segment sum of squares of sorted x[i:j]."""
    shift = x.mean()
    y = x - shift
    s1 = np.concatenate(([0.0], np.cumsum(y)))
    s2 = np.concatenate(([0.0], np.cumsum(y * y)))

    def cost(i, j):
        m = j - i
        s = s1[j] - s1[i]
        c = (s2[j] - s2[i]) - s * s / m
        return c if c > 0.0 else 0.0

    return cost


def cluster_1d_exact(values: Sequence[float], k: int = 2) -> ClusterSplit:
    """Globally optimal k-means of 1-D data by dynamic programming.

    Clusters are contiguous runs of the sorted values and equal values always
    share a cluster. Among splits with equal within-cluster sum of squares the
    one with the smallest low cluster(s) wins.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise ValueError("values must be one-dimensional")
    if k < 1:
        raise ValueError("k must be positive")
    if not np.all(np.isfinite(x)):
        raise ValueError("values must be finite")
    order = np.argsort(x, kind="stable")
    xs = x[order]
    distinct = int(np.count_nonzero(np.diff(xs))) + 1 if len(xs) else 0
    if distinct < k:
        raise DegenerateClusteringError(
            f"degenerate clustering: {distinct} distinct values for k={k}"
        )
    m = len(xs)
    # valid cut positions lie between two different values
    cuts = [i for i in range(1, m) if xs[i - 1] < xs[i]]
    cost = _segment_costs(xs)

    # best[c][j]: optimal cost of xs[:j] in c+1 clusters, j a cut or m
    ends = cuts + [m]
    best = [{j: cost(0, j) for j in ends}]
    back: List[dict] = [{}]
    for c in range(1, k):
        prev = best[-1]
        cur, arg = {}, {}
        for j in ends if c < k - 1 else [m]:
            b, bi = math.inf, None
            # ascending i with a strict improvement test keeps the earliest cut on ties
            for i in cuts:
                if i >= j:
                    break
                if i not in prev:
                    continue
                v = prev[i] + cost(i, j)
                if bi is None or v < b - TIE_RTOL * max(abs(b), abs(v)):
                    b, bi = v, i
            if bi is not None:
                cur[j], arg[j] = b, bi
        best.append(cur)
        back.append(arg)

    bounds = []
    j = m
    for c in range(k - 1, 0, -1):
        j = back[c][j]
        bounds.append(j)
    bounds.reverse()
    wcss = best[k - 1][m]
    low_size = bounds[0] if bounds else m
    return ClusterSplit(
        boundary_index=low_size,
        low_cluster=frozenset(int(i) for i in order[:low_size]),
        high_cluster=frozenset(int(i) for i in order[(bounds[-1] if bounds else m):]),
        wcss=float(wcss),
        boundaries=tuple(bounds),
    )


def working_alphabet(inventory: CharacterInventory) -> FrozenSet[str]:
    """Characters in the high cluster of the 2-means split of log frequencies."""
    chars = sorted(inventory.entries)
    if len(chars) < 2:
        raise DegenerateClusteringError("degenerate clustering: fewer than 2 characters")
    logs = [math.log(inventory.entries[c]) for c in chars]
    split = cluster_1d_exact(logs, k=2)
    return frozenset(chars[i] for i in split.high_cluster)


def _contains_only(form: str, alphabet) -> bool:
    return all(ch in alphabet for ch in form)


def apply_alphabet_filter(lexicon: Lexicon, alphabet) -> Lexicon:
    alphabet = frozenset(alphabet)
    out = lexicon.subset(lambda r: _contains_only(r.form, alphabet))
    if out.n == 0:
        raise EmptyFilterResultError("filter removed all types")
    return out


def is_cjk_char(ch: str) -> bool:
    cp = ord(ch)
    return (
        0x4E00 <= cp <= 0x9FFF  # CJK Unified Ideographs
        or 0x3400 <= cp <= 0x4DBF  # Extension A
        or 0x20000 <= cp <= 0x323AF  # Extensions B-H
        or 0x3040 <= cp <= 0x309F  # Hiragana
        or 0x30A0 <= cp <= 0x30FF  # Katakana
        or 0xAC00 <= cp <= 0xD7AF  # Hangul syllables
    )


def cjk_complement_filter(lexicon: Lexicon) -> Lexicon:
    out = lexicon.subset(lambda r: all(is_cjk_char(ch) for ch in r.form))
    if out.n == 0:
        raise EmptyFilterResultError("filter removed all types")
    return out


def write_alphabet_audit(inventory: CharacterInventory, alphabet, out: TextIO) -> None:
    """One ``kept``/``dropped`` line per character, most frequent first."""
    for ch, freq in sorted(inventory.entries.items(), key=lambda kv: (-kv[1], kv[0])):
        status = "kept" if alphabet is None or ch in alphabet else "dropped"
        shown = ch if ch.isprintable() and not ch.isspace() else ascii(ch)
        out.write(f"{status}\t{shown}\t{freq}\n")
