"""Slow, independent reference implementations used to check the fast paths."""

import itertools
import math
from fractions import Fraction

import numpy as np


def kendall_pairwise(x, y):
    """O(n^2) pair walk: (concordant, discordant, ties_x, ties_y) with joint ties in both."""
    x = np.asarray(x)
    y = np.asarray(y)
    i, j = np.triu_indices(len(x), k=1)
    dx = np.sign(x[i] - x[j])
    dy = np.sign(y[i] - y[j])
    prod = dx * dy
    return (
        int(np.count_nonzero(prod > 0)),
        int(np.count_nonzero(prod < 0)),
        int(np.count_nonzero(dx == 0)),
        int(np.count_nonzero(dy == 0)),
    )


def kendall_pairwise_loop(x, y):
    nc = nd = tx = ty = 0
    n = len(x)
    for a in range(n):
        for b in range(a + 1, n):
            sx = (x[a] > x[b]) - (x[a] < x[b])
            sy = (y[a] > y[b]) - (y[a] < y[b])
            if sx == 0:
                tx += 1
            if sy == 0:
                ty += 1
            if sx * sy > 0:
                nc += 1
            elif sx * sy < 0:
                nd += 1
    return nc, nd, tx, ty


def tau_b_pairwise(x, y):
    nc, nd, tx, ty = kendall_pairwise(x, y)
    n0 = len(x) * (len(x) - 1) // 2
    return (nc - nd) / math.sqrt((n0 - tx) * (n0 - ty))


def wcss(groups):
    total = 0.0
    for g in groups:
        if len(g):
            mu = sum(g) / len(g)
            total += sum((v - mu) ** 2 for v in g)
    return total


def best_contiguous_split(values, rtol=1e-9):
    """Exhaustive search over cuts of the sorted values between distinct values.

    Returns (low size, wcss); ties go to the smaller low cluster.
    """
    xs = sorted(values)
    best = None
    for i in range(1, len(xs)):
        if xs[i - 1] == xs[i]:
            continue
        c = wcss([xs[:i], xs[i:]])
        if best is None or c < best[1] - rtol * max(abs(best[1]), abs(c)):
            best = (i, c)
    return best


def best_any_bipartition(values):
    """Minimum wcss over all 2^(m-1) - 1 splits into two nonempty groups, contiguous or not."""
    m = len(values)
    best = math.inf
    for mask in range(1, 2 ** (m - 1)):
        a = [values[i] for i in range(m) if mask >> i & 1]
        b = [values[i] for i in range(m) if not mask >> i & 1]
        best = min(best, wcss([a, b]))
    return best


def holm_by_hand(pvalues):
    m = len(pvalues)
    order = sorted(range(m), key=lambda i: pvalues[i])
    out = [0.0] * m
    running = 0.0
    for rank, i in enumerate(order):
        running = max(running, min(1.0, (m - rank) * pvalues[i]))
        out[i] = running
    return out


def exact_L(freqs, lengths):
    T = sum(freqs)
    return Fraction(sum(Fraction(f) * Fraction(l) for f, l in zip(freqs, lengths)), T)


def pearson_two_pass(freqs, lengths):
    """Pearson r between p = f/T and l with exact rational moments."""
    n = len(freqs)
    T = sum(freqs)
    p = [Fraction(f, T) for f in freqs]
    l = [Fraction(v) for v in lengths]
    pb = sum(p) / n
    lb = sum(l) / n
    cov = sum((a - pb) * (b - lb) for a, b in zip(p, l)) / (n - 1)
    vp = sum((a - pb) ** 2 for a in p) / (n - 1)
    vl = sum((b - lb) ** 2 for b in l) / (n - 1)
    return float(cov) / math.sqrt(float(vp) * float(vl)), math.sqrt(float(vp)), math.sqrt(float(vl)), float(cov)


def all_double_shuffles(freqs, lengths):
    """L' for every pair of independent permutations of both columns."""
    T = sum(freqs)
    out = []
    for pf in itertools.permutations(freqs):
        for pl in itertools.permutations(lengths):
            out.append(sum(a * b for a, b in zip(pf, pl)) / T)
    return out
