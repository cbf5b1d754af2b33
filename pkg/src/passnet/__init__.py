"""Graphlet entropy of basketball passing sequences."""
from __future__ import annotations

__version__ = "0.1.0"

from .entropy import EntropyReport, Maxima, default_maxima, entropies, theoretical_maxima
from .graphlets import LABELS, GraphletState, classify, feasibility_matrix, state_sequence
from .ingest import GameRecord, IngestError, PassEvent, Possession, load_dataset, validate
from .profiles import Profile, merge, profile_of, stochastic_view
from .scorepart import best_partition, enumerate_partitions, supervised_classes
from .stats import TestResult, chisq_independence, spearman, wilcoxon_signed_rank
from .windowing import GapAssumptionWarning, WindowParams, windows_of

__all__ = [
    "EntropyReport", "GameRecord", "GapAssumptionWarning", "GraphletState", "IngestError", "LABELS",
    "Maxima", "PassEvent", "Possession", "Profile", "TestResult", "WindowParams",
    "best_partition", "chisq_independence", "classify", "default_maxima", "entropies",
    "enumerate_partitions", "feasibility_matrix", "load_dataset", "merge", "profile_of",
    "spearman", "state_sequence", "stochastic_view", "supervised_classes", "theoretical_maxima",
    "validate", "wilcoxon_signed_rank", "windows_of",
]
