"""The entropy objective and O(m)-time swap deltas over frequency counts.

All entropies are in bits. The objective over a record set is the sum of the
per-attribute entropies, so removing or adding one record only touches the
count terms of that record's own values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

import numpy as np

if TYPE_CHECKING:
    from .model import Dataset, FrequencyTable


@dataclass(frozen=True)
class SwapDelta:
    """Objective change from making record t an outlier and o a non-outlier.

    Negative means the swap improves (lowers) the objective.
    """

    delta: float
    t: int
    o: int


def _term(count: int, total: int) -> float:
    # -(c/N) log2(c/N), with 0 log 0 := 0
    if count == 0:
        return 0.0
    p = count / total
    return -p * math.log2(p)


def surprisal_table(total: int) -> np.ndarray:
    """F[c] = -(c/total) log2(c/total) for c in 0..total, F[0] = 0.

    One shared table lets the sweep kernels evaluate deltas without any log
    calls; the divisor never changes during a search because swaps keep the
    non-outlier count fixed.
    """
    if total <= 0:
        return np.zeros(1, dtype=np.float64)
    c = np.arange(total + 1, dtype=np.float64)
    p = c / total
    p[0] = 1.0  # placeholder, overwritten below
    table = -p * np.log2(p)
    table[0] = 0.0
    return table


def attribute_entropy(counts: Mapping[str, int], total: int) -> float:
    """Shannon entropy in bits of one attribute's value counts."""
    if total == 0:
        return 0.0
    if total < 0:
        raise ValueError(f"total must be non-negative, got {total}")
    seen = 0
    entropy = 0.0
    for value, count in counts.items():
        if count < 0:
            raise ValueError(f"negative count {count} for value {value!r}")
        seen += count
        entropy += _term(count, total)
    if seen != total:
        raise ValueError(f"counts sum to {seen}, expected total {total}")
    return entropy


def dataset_entropy(table: "FrequencyTable") -> float:
    """Objective value: summed per-attribute entropy of the current non-outliers."""
    if table.total == 0:
        return 0.0
    counts = table.counts
    positive = counts > 0
    p = np.where(positive, counts, 1) / table.total
    return float(-(np.where(positive, p * np.log2(p), 0.0)).sum())


def max_entropy(dataset: "Dataset") -> float:
    """Upper bound on the objective: sum of log2 domain sizes."""
    return float(np.log2(dataset.domain_sizes().astype(np.float64)).sum())


def evaluate_swap(table: "FrequencyTable", dataset: "Dataset", t: int, o: int) -> SwapDelta:
    """Entropy change if non-outlier t and outlier o traded labels.

    Only the counts of the two records' own values move, so the delta needs
    at most two lookups per attribute. The table is not modified.
    """
    if dataset is not table.dataset:
        raise ValueError("table was built for a different dataset")
    total = table.total
    if total < 1:
        raise ValueError("swap deltas need at least one non-outlier record")
    counts = table.counts
    codes = dataset.codes
    delta = 0.0
    for j in range(dataset.m):
        a = codes[t, j]
        b = codes[o, j]
        if a == b:
            continue
        ca = int(counts[j, a])
        cb = int(counts[j, b])
        if ca <= 0:
            raise ValueError(
                f"record {t} is not counted in attribute {j}; it must be a current non-outlier"
            )
        delta += _term(ca - 1, total) - _term(ca, total) + _term(cb + 1, total) - _term(cb, total)
    return SwapDelta(float(delta), t, o)
