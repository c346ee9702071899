"""Statistics behind narrative detection.

poisson_tail decides whether a day's count for a (keyword, location) pair
is surprising against its trailing baseline. jensen_shannon measures how
far apart the language of two document windows is, which drives
change-point detection. Both are pure and deterministic.
"""

from __future__ import annotations

import math

# stop refining the tail sum once new terms stop mattering at 1e-12 absolute
_REL_EPS = 1e-18
_MAX_TERMS = 500_000


def _log_pmf(i: int, lam: float, log_lam: float) -> float:
    return i * log_lam - lam - math.lgamma(i + 1)


def poisson_tail(c: int, lam: float) -> float:
    """P(X >= c) for X ~ Poisson(lam), accurate to about 1e-12 absolute.

    When c is above the mean the tail is summed directly upward from c, so
    tiny p-values never pass through a catastrophic 1 - CDF cancellation.
    At or below the mean the tail is at least ~0.5 and 1 - CDF(c-1) is
    safe. Terms are generated in log space and accumulated with Kahan
    compensation.
    """
    if lam <= 0.0:
        raise ValueError("rate must be positive")
    if c <= 0:
        return 1.0
    log_lam = math.log(lam)

    if c > lam:
        # ascending tail: terms strictly decreasing, geometric convergence
        term = math.exp(_log_pmf(c, lam, log_lam))
        total = term
        comp = 0.0
        i = c
        while term > 0.0 and i - c < _MAX_TERMS:
            i += 1
            term *= lam / i
            if term <= total * _REL_EPS:
                break
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        return min(1.0, total)

    # c <= lam: accumulate the lower CDF and complement
    total = 0.0
    comp = 0.0
    for i in range(c):
        y = math.exp(_log_pmf(i, lam, log_lam)) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return max(0.0, 1.0 - total)


def jensen_shannon(counts_a, counts_b) -> float:
    """Jensen-Shannon divergence, base 2, between two bags of words.

    Each side becomes a distribution by add-one smoothing over the union
    vocabulary, so a word absent on one side still gets mass and the
    divergence stays strictly below 1. Symmetric, in [0, 1], and zero
    exactly when the smoothed distributions coincide. Two empty bags give
    0.0 by convention.
    """
    vocab = set(counts_a) | set(counts_b)
    if not vocab:
        return 0.0
    v = len(vocab)
    total_a = sum(counts_a.values()) + v
    total_b = sum(counts_b.values()) + v
    div = 0.0
    for w in vocab:
        pa = (counts_a.get(w, 0) + 1) / total_a
        pb = (counts_b.get(w, 0) + 1) / total_b
        m = 0.5 * (pa + pb)
        div += 0.5 * pa * math.log2(pa / m) + 0.5 * pb * math.log2(pb / m)
    # clamp tiny negative float residue
    return min(1.0, max(0.0, div))
