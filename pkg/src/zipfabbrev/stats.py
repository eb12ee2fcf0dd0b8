"""Mean token length, the random baseline and the correlation tests.

Probabilities enter the correlations as ``p_i = f_i / T``. With that choice
the sample Pearson correlation between probability and length satisfies

    r = (L - M) / ((n - 1) * s_p * s_l)

so a left-sided test on ``r`` is a test of ``L`` being below the random
baseline ``M``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats as sps

from zipfabbrev.model import Lexicon

EXACT_CAP = 8
# relative slack when comparing a shuffled L' (or S) to the observed one
_CMP_RTOL = 1e-10


class UndefinedCorrelationError(ValueError):
    pass


class ShuffleVariant(str, Enum):
    SHUFFLE_FREQUENCIES = "shuffle_frequencies"
    SHUFFLE_LENGTHS = "shuffle_lengths"
    SHUFFLE_BOTH = "shuffle_both"


@dataclass(frozen=True)
class StatsSummary:
    L: float
    M: float
    L_r: float
    cov_pl: float
    s_p: float
    s_l: float
    r: float
    r_pvalue: float
    tau: float
    tau_pvalue: float
    n: int
    T: int
    perm_pvalue: Optional[float] = None

    def to_dict(self):
        return asdict(self)


def mean_token_length(lexicon: Lexicon) -> float:
    if lexicon.n == 0:
        raise ValueError("empty lexicon")
    return math.fsum(r.frequency * r.length for r in lexicon.records) / lexicon.T


def random_baseline(lexicon: Lexicon) -> float:
    """Expected L under random re-pairing of frequencies and lengths: the mean type length."""
    if lexicon.n == 0:
        raise ValueError("empty lexicon")
    return math.fsum(r.length for r in lexicon.records) / lexicon.n


mean_type_length = random_baseline


@lru_cache(maxsize=16)
def _all_permutations(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.intp)
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def enumerate_shuffles(
    lexicon: Lexicon, variant: ShuffleVariant = ShuffleVariant.SHUFFLE_LENGTHS, cap: int = EXACT_CAP
) -> np.ndarray:
    """L' for every permutation of the shuffled column, in lexicographic permutation order.

    Shuffling both columns independently gives each bijection between the
    columns exactly n! times, so the ``shuffle_both`` multiset is the same as
    permuting one column against the other, up to multiplicity.
    """
    variant = ShuffleVariant(variant)
    n = lexicon.n
    if n > cap:
        raise ValueError(f"n={n} exceeds exact-enumeration cap {cap}; use permutation_test")
    perms = _all_permutations(n)
    f = lexicon.frequencies.astype(float)
    l = lexicon.lengths
    if variant is ShuffleVariant.SHUFFLE_FREQUENCIES:
        totals = f[perms] @ l
    else:
        totals = l[perms] @ f
    return totals / lexicon.T


def exact_permutation_pvalue(
    lexicon: Lexicon, variant: ShuffleVariant = ShuffleVariant.SHUFFLE_LENGTHS, cap: int = EXACT_CAP
) -> float:
    """Fraction of all shufflings whose L' is at most the observed L."""
    values = enumerate_shuffles(lexicon, variant, cap)
    L = mean_token_length(lexicon)
    return float(np.mean(values <= L + _CMP_RTOL * max(1.0, abs(L))))


def permutation_test(
    lexicon: Lexicon,
    variant: ShuffleVariant = ShuffleVariant.SHUFFLE_LENGTHS,
    trials: int = 10_000,
    seed: int = 0,
    batch_cells: int = 2_000_000,
) -> float:
    """Monte Carlo left-tail p-value of L under random shuffling.

    Uses the add-one estimator (1 + #{L' <= L}) / (trials + 1).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    variant = ShuffleVariant(variant)
    rng = np.random.default_rng(seed)
    n = lexicon.n
    f = lexicon.frequencies.astype(float)
    l = lexicon.lengths
    T = lexicon.T
    L = mean_token_length(lexicon)
    threshold = L + _CMP_RTOL * max(1.0, abs(L))
    # shuffled column and the one kept in place
    moving, fixed = (f, l) if variant is ShuffleVariant.SHUFFLE_FREQUENCIES else (l, f)

    hits = 0
    done = 0
    batch = max(1, batch_cells // max(n, 1))
    while done < trials:
        b = min(batch, trials - done)
        idx = rng.permuted(np.tile(np.arange(n), (b, 1)), axis=1)
        Lp = (moving[idx] @ fixed) / T
        hits += int(np.count_nonzero(Lp <= threshold))
        done += b
    return (1 + hits) / (trials + 1)


def pearson_r(lexicon: Lexicon) -> Tuple[float, float, float, float, float]:
    """Pearson r between type probability and length, with a left-sided t-test.

    Returns ``(r, left_pvalue, s_p, s_l, cov_pl)``.
    """
    n = lexicon.n
    if n < 3:
        raise UndefinedCorrelationError(f"Pearson test needs n >= 3, got {n}")
    f = lexicon.frequencies
    l = lexicon.lengths
    if np.all(f == f[0]) or np.all(l == l[0]):
        raise UndefinedCorrelationError("undefined correlation: a column has zero variance")
    p = f / lexicon.T
    dp = p - p.mean()
    dl = l - l.mean()
    cov = math.fsum(dp * dl) / (n - 1)
    s_p = math.sqrt(math.fsum(dp * dp) / (n - 1))
    s_l = math.sqrt(math.fsum(dl * dl) / (n - 1))
    r = min(1.0, max(-1.0, cov / (s_p * s_l)))
    if r <= -1.0:
        pval = 0.0
    elif r >= 1.0:
        pval = 1.0
    else:
        t = r * math.sqrt((n - 2) / (1.0 - r * r))
        pval = float(sps.t.cdf(t, n - 2))
    return r, pval, s_p, s_l, cov


def _dense_ranks(x: np.ndarray) -> np.ndarray:
    return np.unique(x, return_inverse=True)[1].astype(np.int64)


def _count_inversions(y: np.ndarray) -> int:
    """Number of pairs i < j with y[i] > y[j], by bottom-up merge counting.

    ``y`` must hold nonnegative integer ranks. Each level merges sorted runs of
    width ``w``; the offset ``block * R`` lets one global searchsorted serve
    every run at once.
    """
    a = np.asarray(y, dtype=np.int64).copy()
    n = len(a)
    if n < 2:
        return 0
    R = int(a.max()) + 1
    idx = np.arange(n, dtype=np.int64)
    inv = 0
    w = 1
    while w < n:
        block = idx // (2 * w)
        right = (idx // w) % 2 == 1
        left_keys = block[~right] * R + a[~right]
        rb, rv = block[right], a[right]
        # left elements in the same block that are strictly greater than rv
        end = np.searchsorted(left_keys, rb * R + (R - 1), side="right")
        le = np.searchsorted(left_keys, rb * R + rv, side="right")
        inv += int((end - le).sum())
        a = np.sort(block * R + a) % R
        w *= 2
    return inv


def _tie_pairs(x: np.ndarray) -> np.ndarray:
    _, counts = np.unique(x, return_counts=True)
    return counts.astype(np.int64)


def kendall_counts(x, y) -> Tuple[int, int, int, int]:
    """Return ``(S, n0, n1, n2)`` for tau-b: concordant minus discordant pairs,
    total pairs, pairs tied in x, pairs tied in y. O(n log n)."""
    x = np.asarray(x)
    y = np.asarray(y)
    n = len(x)
    n0 = n * (n - 1) // 2
    xr = _dense_ranks(x)
    yr = _dense_ranks(y)
    order = np.lexsort((yr, xr))
    xs, ys = xr[order], yr[order]
    tx = _tie_pairs(xs)
    ty = _tie_pairs(ys)
    n1 = int((tx * (tx - 1) // 2).sum())
    n2 = int((ty * (ty - 1) // 2).sum())
    joint = _tie_pairs(xs * (int(ys.max()) + 1 if n else 1) + ys)
    n3 = int((joint * (joint - 1) // 2).sum())
    swaps = _count_inversions(ys)
    S = n0 - n1 - n2 + n3 - 2 * swaps
    return S, n0, n1, n2


def tau_b_from_counts(S: int, n0: int, n1: int, n2: int) -> float:
    return S / math.sqrt((n0 - n1) * (n0 - n2))


def _kendall_null_variance(x: np.ndarray, y: np.ndarray) -> float:
    n = len(x)
    t = _tie_pairs(x).astype(float)
    u = _tie_pairs(y).astype(float)
    v0 = n * (n - 1) * (2 * n + 5)
    vt = (t * (t - 1) * (2 * t + 5)).sum()
    vu = (u * (u - 1) * (2 * u + 5)).sum()
    var = (v0 - vt - vu) / 18.0
    var += (t * (t - 1)).sum() * (u * (u - 1)).sum() / (2.0 * n * (n - 1))
    if n > 2:
        var += (t * (t - 1) * (t - 2)).sum() * (u * (u - 1) * (u - 2)).sum() / (9.0 * n * (n - 1) * (n - 2))
    return var


def _exact_kendall_left_p(x: np.ndarray, y: np.ndarray, S_obs: int) -> float:
    # all n! re-pairings of y against x; tie counts, hence the tau-b
    # denominator, are the same for every re-pairing, so compare S directly
    n = len(x)
    i, j = np.triu_indices(n, k=1)
    sx = np.sign(x[i] - x[j]).astype(np.int64)
    yp = y[_all_permutations(n)]
    S = np.sign(yp[:, i] - yp[:, j]).astype(np.int64) @ sx
    return float(np.mean(S <= S_obs))


def kendall_tau(lexicon: Lexicon, exact_cap: int = EXACT_CAP) -> Tuple[float, float]:
    """Kendall tau-b between frequency and length with a left-sided p-value.

    The p-value is exact (all re-pairings) for n <= ``exact_cap`` and uses the
    tie-adjusted normal approximation otherwise.
    """
    n = lexicon.n
    if n < 2:
        raise UndefinedCorrelationError(f"Kendall tau needs n >= 2, got {n}")
    x = lexicon.frequencies
    y = lexicon.lengths
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise UndefinedCorrelationError("undefined correlation: a column is all tied")
    S, n0, n1, n2 = kendall_counts(x, y)
    tau = tau_b_from_counts(S, n0, n1, n2)
    if n <= exact_cap:
        pval = _exact_kendall_left_p(x.astype(float), y, S)
    else:
        z = S / math.sqrt(_kendall_null_variance(x, y))
        pval = float(sps.norm.cdf(z))
    return tau, pval


def holm_bonferroni(pvalues: Sequence[float]) -> List[float]:
    """Holm step-down adjusted p-values, in the input order."""
    p = np.asarray(pvalues, dtype=float)
    if p.size == 0:
        return []
    if np.any(~(p >= 0)) or np.any(p > 1):
        raise ValueError("p-values must lie in [0, 1]")
    m = p.size
    order = np.argsort(p, kind="stable")
    scaled = np.minimum(1.0, (m - np.arange(m)) * p[order])
    adjusted = np.empty(m)
    adjusted[order] = np.maximum.accumulate(scaled)
    return adjusted.tolist()


def summarize(
    lexicon: Lexicon,
    trials: int = 0,
    seed: int = 0,
    exact_cap: int = EXACT_CAP,
    variant: ShuffleVariant = ShuffleVariant.SHUFFLE_LENGTHS,
) -> StatsSummary:
    """All statistics for one lexicon. ``trials > 0`` adds a Monte Carlo test of L."""
    L = mean_token_length(lexicon)
    M = random_baseline(lexicon)
    r, r_p, s_p, s_l, cov = pearson_r(lexicon)
    tau, tau_p = kendall_tau(lexicon, exact_cap)
    perm_p = permutation_test(lexicon, variant, trials, seed) if trials > 0 else None
    return StatsSummary(
        L=L, M=M, L_r=M, cov_pl=cov, s_p=s_p, s_l=s_l, r=r, r_pvalue=r_p,
        tau=tau, tau_pvalue=tau_p, n=lexicon.n, T=lexicon.T, perm_pvalue=perm_p,
    )
