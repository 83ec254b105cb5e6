"""Rare-class coverage scoring of ranked outlier lists.

The search returns an unordered outlier set; ranking orders it by how much
entropy each record would add if it were put back among the non-outliers, so
cutoffs below k are well defined. Coverage rows then report, per top ratio,
how many rare-class records the cutoff captures.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .entropy import dataset_entropy, surprisal_table
from .model import Dataset, build_frequency_table
from .search import SearchResult


@dataclass(frozen=True)
class RareClassSpec:
    """Class tokens designated rare (the evaluation ground truth)."""

    rare_labels: frozenset[str]

    def __post_init__(self) -> None:
        if not self.rare_labels:
            raise ValueError("at least one rare label is required")
        object.__setattr__(self, "rare_labels", frozenset(self.rare_labels))


@dataclass(frozen=True)
class CoverageRow:
    """One table row: how many rare records the top cut captures."""

    top_ratio: float
    top_count: int
    detected: int
    coverage: float


def top_count(ratio: float, n: int) -> int:
    """Records in a top-ratio cut: round ratio*n half-up, at least 1."""
    return max(1, math.floor(ratio * n + 0.5))


def reinsertion_gains(result: SearchResult, dataset: Dataset) -> list[float]:
    """Per outlier, the entropy increase if it alone rejoined the non-outliers."""
    table = build_frequency_table(dataset, result.labeling)
    base = dataset_entropy(table)
    grown = surprisal_table(table.total + 1)
    # entropy terms as they would read with the larger divisor, before adding
    # the candidate's own values
    rebased = float(grown[table.counts].sum())
    gains = []
    for o in result.outlier_indices:
        entropy_after = rebased
        for j in range(dataset.m):
            c = int(table.counts[j, dataset.codes[o, j]])
            entropy_after += float(grown[c + 1] - grown[c])
        gains.append(entropy_after - base)
    return gains


def rank_outliers(result: SearchResult, dataset: Dataset) -> list[int]:
    """Outlier indices ordered most-outlying first.

    A record is ranked by its re-insertion gain: the more entropy it would add
    back, the stranger it is relative to the kept records. Ties break by
    ascending index.
    """
    gains = reinsertion_gains(result, dataset)
    order = sorted(zip(result.outlier_indices, gains), key=lambda x: (-x[1], x[0]))
    return [i for i, _ in order]


def coverage_table(
    ranking: Sequence[int],
    labels: Sequence[str],
    spec: RareClassSpec,
    ratios: Iterable[float],
) -> list[CoverageRow]:
    """Score a ranking against the rare classes at each top-ratio cutoff.

    Each row counts rare-class members among the first top_count(ratio, n)
    ranking entries; a ranking shorter than the cutoff is used whole, so
    coverage saturates once the cutoff passes the ranking length.
    """
    n = len(labels)
    if n == 0:
        raise ValueError("labels must be non-empty")
    seen = set()
    for i in ranking:
        if not 0 <= i < n:
            raise ValueError(f"ranking index {i} out of range for {n} records")
        if i in seen:
            raise ValueError(f"ranking repeats index {i}")
        seen.add(i)
    present = set(labels)
    unknown = set(spec.rare_labels) - present
    if unknown:
        raise ValueError(f"rare labels {sorted(unknown)} never occur in the data")
    total_rare = sum(1 for lab in labels if lab in spec.rare_labels)

    rows = []
    for ratio in ratios:
        if not 0 < ratio <= 1:
            raise ValueError(f"top ratio must be in (0, 1], got {ratio}")
        cut = top_count(ratio, n)
        detected = sum(1 for i in ranking[:cut] if labels[i] in spec.rare_labels)
        rows.append(
            CoverageRow(
                top_ratio=ratio,
                top_count=cut,
                detected=detected,
                coverage=detected / total_rare,
            )
        )
    return rows


COLUMN_NAMES = ("Top Ratio", "Number of Records", "Detected", "Coverage")


def format_coverage(rows: Sequence[CoverageRow], style: str = "plain") -> str:
    """Render coverage rows as an aligned table ("plain") or CSV ("csv")."""
    cells = [
        (
            f"{row.top_ratio * 100:g}%",
            str(row.top_count),
            str(row.detected),
            f"{row.coverage * 100:.2f}%",
        )
        for row in rows
    ]
    if style == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(name.lower().replace(" ", "_") for name in COLUMN_NAMES)
        for row in rows:
            writer.writerow(
                [f"{row.top_ratio:g}", row.top_count, row.detected, f"{row.coverage:.6f}"]
            )
        return out.getvalue()
    if style != "plain":
        raise ValueError(f"unknown style {style!r}; expected plain or csv")
    widths = [
        max([len(name)] + [len(c[i]) for c in cells]) for i, name in enumerate(COLUMN_NAMES)
    ]
    lines = ["  ".join(name.ljust(w) for name, w in zip(COLUMN_NAMES, widths))]
    for c in cells:
        lines.append("  ".join(value.rjust(w) for value, w in zip(c, widths)))
    return "\n".join(lines) + "\n"
