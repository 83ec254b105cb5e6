"""Core data types: categorical datasets, frequency tables, outlier labelings.

Records are stored as integer codes into per-attribute domains so that the
search kernels can work on flat arrays; the original tokens stay recoverable
through the schema.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class AttributeSchema:
    """A named categorical attribute and its ordered value domain."""

    name: str
    domain: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.domain:
            raise ValueError(f"attribute {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError(f"attribute {self.name!r} has duplicate domain tokens")
        object.__setattr__(self, "_code", {tok: i for i, tok in enumerate(self.domain)})

    def code(self, token: str) -> int:
        """Integer code of a domain token."""
        return self._code[token]

    def __len__(self) -> int:
        return len(self.domain)


class Dataset:
    """Immutable table of n records by m categorical attributes.

    ``codes[i, j]`` is the code of record i's value for attribute j in
    ``schema[j].domain``. An optional per-record class label sequence is
    carried along for evaluation purposes only.
    """

    def __init__(
        self,
        codes: np.ndarray,
        schema: Sequence[AttributeSchema],
        labels: Sequence[str] | None = None,
    ):
        codes = np.ascontiguousarray(codes, dtype=np.int32)
        if codes.ndim != 2:
            raise ValueError("codes must be a 2-d array")
        n, m = codes.shape
        if n < 1:
            raise ValueError("a dataset needs at least one record")
        if m < 1:
            raise ValueError("a dataset needs at least one attribute")
        schema = tuple(schema)
        if len(schema) != m:
            raise ValueError(f"schema lists {len(schema)} attributes, records have {m}")
        sizes = np.array([len(a) for a in schema], dtype=np.int64)
        if codes.min(initial=0) < 0 or (codes >= sizes[None, :]).any():
            raise ValueError("value code outside its attribute domain")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} labels for {n} records")
        codes.setflags(write=False)
        self.codes = codes
        self.schema = schema
        self.labels = labels

    @classmethod
    def from_records(
        cls,
        records: Iterable[Sequence[str]],
        names: Sequence[str] | None = None,
        labels: Sequence[str] | None = None,
    ) -> "Dataset":
        """Build a dataset from token rows, with domains in first-seen order."""
        rows = [tuple(r) for r in records]
        if not rows:
            raise ValueError("a dataset needs at least one record")
        m = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValueError(f"record {i} has {len(row)} values, expected {m}")
        if names is None:
            names = [f"col{j}" for j in range(m)]
        elif len(names) != m:
            raise ValueError(f"{len(names)} attribute names for {m} attributes")
        domains: list[dict[str, int]] = [{} for _ in range(m)]
        codes = np.empty((len(rows), m), dtype=np.int32)
        for i, row in enumerate(rows):
            for j, tok in enumerate(row):
                dom = domains[j]
                code = dom.get(tok)
                if code is None:
                    code = dom[tok] = len(dom)
                codes[i, j] = code
        schema = [
            AttributeSchema(str(name), tuple(dom)) for name, dom in zip(names, domains)
        ]
        return cls(codes, schema, labels=labels)

    @property
    def n(self) -> int:
        return self.codes.shape[0]

    @property
    def m(self) -> int:
        return self.codes.shape[1]

    def __len__(self) -> int:
        return self.n

    def domain_sizes(self) -> np.ndarray:
        return np.array([len(a) for a in self.schema], dtype=np.int64)

    def record(self, i: int) -> tuple[str, ...]:
        """The i-th record as its original tokens."""
        row = self.codes[i]
        return tuple(a.domain[c] for a, c in zip(self.schema, row))

    def iter_records(self) -> Iterable[tuple[str, ...]]:
        for i in range(self.n):
            yield self.record(i)

    def subset(self, indices: Sequence[int]) -> "Dataset":
        """New dataset restricted to the given records (schema unchanged)."""
        idx = list(indices)
        labels = None
        if self.labels is not None:
            labels = [self.labels[i] for i in idx]
        return Dataset(self.codes[idx], self.schema, labels=labels)


class OutlierLabeling:
    """Partition of records into k outliers (flag 1) and non-outliers (flag 0),
    plus the running objective value of the non-outlier part, in bits."""

    def __init__(self, flags: np.ndarray, objective: float = 0.0):
        flags = np.ascontiguousarray(flags, dtype=np.int8)
        if flags.ndim != 1:
            raise ValueError("flags must be a 1-d array")
        if not np.isin(flags, (0, 1)).all():
            raise ValueError("flags must be 0 or 1")
        self.flags = flags
        self.objective = float(objective)

    @classmethod
    def from_indices(cls, n: int, outliers: Iterable[int], objective: float = 0.0):
        idx = list(outliers)
        if len(set(idx)) != len(idx):
            raise ValueError("outlier indices must be distinct")
        flags = np.zeros(n, dtype=np.int8)
        for i in idx:
            if not 0 <= i < n:
                raise ValueError(f"outlier index {i} out of range for {n} records")
            flags[i] = 1
        return cls(flags, objective)

    @property
    def n(self) -> int:
        return len(self.flags)

    @property
    def k(self) -> int:
        return int(self.flags.sum())

    def is_outlier(self, i: int) -> bool:
        return bool(self.flags[i])

    def outlier_indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.flags)]

    def copy(self) -> "OutlierLabeling":
        return OutlierLabeling(self.flags.copy(), self.objective)


class FrequencyTable:
    """Per-attribute value counts over the records currently labeled non-outlier.

    ``counts[j, c]`` is the count of value code c for attribute j; rows are
    padded to the widest domain. Zero-count values keep their slot, so domain
    enumeration stays stable while swaps move counts up and down.
    """

    def __init__(self, dataset: Dataset, counts: np.ndarray, total: int):
        counts = np.ascontiguousarray(counts, dtype=np.int64)
        if counts.shape[0] != dataset.m:
            raise ValueError("one counts row per attribute required")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        self.dataset = dataset
        self.counts = counts
        self.total = int(total)

    def count(self, attribute: int, token: str) -> int:
        return int(self.counts[attribute, self.dataset.schema[attribute].code(token)])

    def attribute_counts(self, attribute: int) -> dict[str, int]:
        """Counts keyed by token, zero-count values included."""
        dom = self.dataset.schema[attribute].domain
        row = self.counts[attribute]
        return {tok: int(row[c]) for c, tok in enumerate(dom)}

    def copy(self) -> "FrequencyTable":
        return FrequencyTable(self.dataset, self.counts.copy(), self.total)

    def same_counts(self, other: "FrequencyTable") -> bool:
        return self.total == other.total and np.array_equal(self.counts, other.counts)


def build_frequency_table(dataset: Dataset, labeling: OutlierLabeling) -> FrequencyTable:
    """Count attribute values over the flag-0 records of ``labeling``."""
    if labeling.n != dataset.n:
        raise ValueError(
            f"labeling covers {labeling.n} records, dataset has {dataset.n}"
        )
    keep = labeling.flags == 0
    width = int(dataset.domain_sizes().max())
    counts = np.zeros((dataset.m, width), dtype=np.int64)
    kept_codes = dataset.codes[keep]
    for j in range(dataset.m):
        counts[j] = np.bincount(kept_codes[:, j], minlength=width)
    return FrequencyTable(dataset, counts, int(keep.sum()))


def apply_swap(table: FrequencyTable, labeling: OutlierLabeling, t: int, o: int):
    """Make non-outlier t an outlier and outlier o a non-outlier.

    Updates the table counts by one in each changed slot and moves the
    labeling objective by the swap's entropy delta. Returns that delta.
    """
    from .entropy import evaluate_swap

    if labeling.is_outlier(t):
        raise ValueError(f"record {t} is already an outlier")
    if not labeling.is_outlier(o):
        raise ValueError(f"record {o} is not an outlier")
    delta = evaluate_swap(table, table.dataset, t, o)
    cols = np.arange(table.dataset.m)
    table.counts[cols, table.dataset.codes[t]] -= 1
    table.counts[cols, table.dataset.codes[o]] += 1
    labeling.flags[t] = 1
    labeling.flags[o] = 0
    labeling.objective += delta.delta
    return delta
