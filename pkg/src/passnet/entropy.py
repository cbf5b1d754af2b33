"""State, transition and restricted-transition entropies (bits)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphlets import feasibility_matrix
from .profiles import StochasticView

METRICS = ("se", "te", "rte")


class EntropyError(ValueError):
    pass


def _plogp(x: np.ndarray) -> np.ndarray:
    """Elementwise -x*log2(x) with 0*log 0 = 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = -x[pos] * np.log2(x[pos])
    return out


@dataclass(frozen=True)
class Maxima:
    se_max: float
    te_max: float
    rte_max: float

    def of(self, metric: str) -> float:
        return getattr(self, f"{metric}_max")


@dataclass(frozen=True)
class EntropyReport:
    se: float
    te: float
    rte: float
    se_max: float
    te_max: float
    rte_max: float

    @property
    def se_norm(self) -> float:
        return 100.0 * self.se / self.se_max

    @property
    def te_norm(self) -> float:
        return 100.0 * self.te / self.te_max

    @property
    def rte_norm(self) -> float:
        return 100.0 * self.rte / self.rte_max

    def value(self, metric: str, normalized: bool = False) -> float:
        return getattr(self, f"{metric}_norm" if normalized else metric)


def theoretical_maxima(feasibility: np.ndarray, interpretation: str = "uniform") -> Maxima:
    """Entropy ceilings for a transition-feasibility structure.

    Every row is taken uniform over its feasible successors (and over its
    feasible non-self successors for the restricted chain). The states are
    weighted uniformly ("uniform") or by the stationary distribution of the
    uniform-row chain ("stationary").
    """
    f = np.asarray(feasibility, dtype=bool)
    n = f.shape[0]
    sizes = f.sum(axis=1)
    if (sizes == 0).any():
        raise EntropyError(f"states without feasible successors: {np.flatnonzero(sizes == 0).tolist()}")
    off = f & ~np.eye(n, dtype=bool)
    off_sizes = off.sum(axis=1)
    row_te = np.log2(sizes)
    row_rte = np.log2(np.maximum(off_sizes, 1))
    if interpretation == "uniform":
        w = np.full(n, 1.0 / n)
    elif interpretation == "stationary":
        w = stationary_distribution(f / sizes[:, None])
    else:
        raise ValueError(f"unknown interpretation {interpretation!r}")
    return Maxima(float(np.log2(n)), float(w @ row_te), float(w @ row_rte))


def stationary_distribution(P: np.ndarray) -> np.ndarray:
    """Left eigenvector of a row-stochastic matrix for eigenvalue 1."""
    vals, vecs = np.linalg.eig(P.T)
    k = int(np.argmin(np.abs(vals - 1.0)))
    pi = np.real(vecs[:, k])
    pi = np.abs(pi)
    return pi / pi.sum()


@lru_cache(maxsize=None)
def default_maxima() -> Maxima:
    return theoretical_maxima(feasibility_matrix())


def entropy_values(view: StochasticView) -> tuple[float, float, float]:
    se = float(_plogp(view.p).sum())
    te = float(view.p @ _plogp(view.M).sum(axis=1))
    rte = float(view.p @ _plogp(view.M_restricted).sum(axis=1))
    return se, te, rte


def entropies(view: StochasticView, maxima: Maxima | None = None) -> EntropyReport:
    """SE, TE and RTE of a view.

    Rows never seen as a transition source, and rows with only
    self-transitions in the restricted chain, contribute nothing.
    """
    if maxima is None:
        maxima = default_maxima()
    se, te, rte = entropy_values(view)
    return EntropyReport(se, te, rte, maxima.se_max, maxima.te_max, maxima.rte_max)


def normalized(report: EntropyReport) -> dict[str, float]:
    for m in METRICS:
        if report.value(m + "_max") <= 0:
            raise EntropyError(f"{m} maximum must be positive")
    return {m: report.value(m, normalized=True) for m in METRICS}

