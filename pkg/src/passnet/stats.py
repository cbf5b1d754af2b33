"""Nonparametric tests: Spearman, Wilcoxon signed-rank, 2 x k chi-square."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy import stats as sps

ALTERNATIVES = ("two-sided", "greater", "less")
SPEARMAN_EXACT_MAX_N = 9
WILCOXON_EXACT_MAX_N = 20
# float noise in differences of decimal inputs must not break ties
_ROUND_DIGITS = 12


@dataclass(frozen=True)
class TestResult:
    statistic: float | None
    p_value: float | None
    n: int
    method: str  # "exact" | "normal-approximation" | "t-approximation" | "chi-square"
    alternative: str = "two-sided"
    z_approx: float | None = None
    df: int | None = None
    note: str = ""

    __test__ = False  # not a pytest class


def _check_alternative(alternative: str) -> None:
    if alternative not in ALTERNATIVES:
        raise ValueError(f"alternative must be one of {ALTERNATIVES}, got {alternative!r}")


def midranks(values) -> np.ndarray:
    return sps.rankdata(np.round(np.asarray(values, dtype=float), _ROUND_DIGITS), method="average")


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    a = a - a.mean()
    b = b - b.mean()
    return float((a @ b) / math.sqrt((a @ a) * (b @ b)))


def spearman(x, y, alternative: str = "two-sided") -> TestResult:
    """Spearman's rho on midranks.

    Exact permutation p-value for n <= 9, Student-t approximation above.
    A constant input leaves rho undefined (statistic and p are None).
    """
    _check_alternative(alternative)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-D and of equal length")
    n = len(x)
    if n < 3:
        raise ValueError("spearman needs at least 3 pairs")
    rx, ry = midranks(x), midranks(y)
    if np.ptp(rx) == 0 or np.ptp(ry) == 0:
        return TestResult(None, None, n, "undefined", alternative, note="constant input")
    rho = _pearson(rx, ry)
    if n <= SPEARMAN_EXACT_MAX_N:
        p = _spearman_exact_p(rx, ry, rho, alternative)
        return TestResult(rho, p, n, "exact", alternative)
    if abs(rho) >= 1.0:
        t = math.copysign(math.inf, rho)
    else:
        t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    dist = sps.t(n - 2)
    if alternative == "two-sided":
        p = 2 * dist.sf(abs(t))
    elif alternative == "greater":
        p = dist.sf(t)
    else:
        p = dist.cdf(t)
    return TestResult(rho, float(min(1.0, p)), n, "t-approximation", alternative, z_approx=None)


def _spearman_exact_p(rx: np.ndarray, ry: np.ndarray, rho: float, alternative: str) -> float:
    perms = np.array(list(permutations(ry)), dtype=float)
    a = rx - rx.mean()
    b = perms - perms.mean(axis=1, keepdims=True)
    rhos = (b @ a) / math.sqrt(a @ a) / np.sqrt((b * b).sum(axis=1))
    eps = 1e-12
    if alternative == "two-sided":
        hits = np.abs(rhos) >= abs(rho) - eps
    elif alternative == "greater":
        hits = rhos >= rho - eps
    else:
        hits = rhos <= rho + eps
    return float(hits.mean())


def _signed_rank_distribution(ranks: np.ndarray) -> tuple[np.ndarray, float]:
    """Counts of each attainable W+ over all 2^n sign assignments.

    Midranks are multiples of 1/2, so work on doubled ranks.
    Returns (counts indexed by 2*W, 2**n).
    """
    doubled = np.rint(2 * ranks).astype(int)
    counts = np.zeros(int(doubled.sum()) + 1, dtype=object)
    counts[0] = 1
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[:len(counts) - r]
        counts = counts + shifted
    return counts, float(2 ** len(ranks))


def wilcoxon_signed_rank(a, b, alternative: str = "two-sided", exact: bool | None = None) -> TestResult:
    """Paired signed-rank test on a - b.

    W is the sum of ranks of positive differences (midranks on ties, zero
    differences dropped). p is exact for up to 20 non-zero pairs; z is the
    untied normal score (W - n(n+1)/4) / sqrt(n(n+1)(2n+1)/24) and is always
    reported.
    """
    _check_alternative(alternative)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("a and b must be 1-D and of equal length")
    d = np.round(a - b, _ROUND_DIGITS)
    d = d[d != 0]
    n = len(d)
    if n == 0:
        return TestResult(None, None, 0, "undefined", alternative, note="all differences are zero")
    ranks = sps.rankdata(np.abs(d), method="average")
    w = float(ranks[d > 0].sum())
    mean = n * (n + 1) / 4
    sd = math.sqrt(n * (n + 1) * (2 * n + 1) / 24)
    z = (w - mean) / sd
    use_exact = n <= WILCOXON_EXACT_MAX_N if exact is None else exact
    if use_exact:
        counts, total = _signed_rank_distribution(ranks)
        k = int(round(2 * w))
        p_le = float(sum(counts[:k + 1])) / total
        p_ge = float(sum(counts[k:])) / total
        method = "exact"
    else:
        p_le = float(sps.norm.cdf(z))
        p_ge = float(sps.norm.sf(z))
        method = "normal-approximation"
    if alternative == "two-sided":
        p = min(1.0, 2 * min(p_le, p_ge))
    elif alternative == "greater":
        p = p_ge
    else:
        p = p_le
    note = "tied |differences| present" if len(np.unique(np.abs(d))) < n else ""
    return TestResult(w, p, n, method, alternative, z_approx=z, note=note)


def chisq_independence(counts_a, counts_b) -> TestResult:
    """Chi-square test of independence on the 2 x k table [counts_a; counts_b].

    Categories empty in both rows are dropped and df shrinks accordingly.
    ``n`` is the grand total of the table.
    """
    table = np.vstack([np.asarray(counts_a, dtype=float), np.asarray(counts_b, dtype=float)])
    if (table < 0).any():
        raise ValueError("counts must be non-negative")
    if (table.sum(axis=1) <= 0).any():
        raise ValueError("each count vector needs a positive total")
    keep = table.sum(axis=0) > 0
    dropped = int((~keep).sum())
    table = table[:, keep]
    total = table.sum()
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / total
    stat = float(((table - expected) ** 2 / expected).sum())
    df = table.shape[1] - 1
    p = float(sps.chi2.sf(stat, df)) if df > 0 else 1.0
    note = f"dropped {dropped} empty categories" if dropped else ""
    return TestResult(stat, p, int(round(total)), "chi-square", "two-sided", df=df, note=note)
