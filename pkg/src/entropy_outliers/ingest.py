"""Loading delimited text into datasets, plus synthetic data generation.

Numeric columns are discretized into equal-width bin tokens, missing raw
values become one reserved categorical token, and everything downstream sees
categorical tokens only.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Sequence

import numpy as np

from .model import AttributeSchema, Dataset

MISSING_TOKEN = "«missing»"
DOMINANT_SHARE = 0.8


class ParseError(ValueError):
    """Malformed input file; carries a 1-based file row number when known."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


def escape_token(raw: str) -> str:
    """Guard a raw token so it can never collide with MISSING_TOKEN.

    Raw tokens starting with "«" get one more "«" prepended; the reserved
    token keeps a single leading guillemet to itself.
    """
    return "«" + raw if raw.startswith("«") else raw


def unescape_token(token: str) -> str:
    """Inverse of escape_token for stored (non-missing) tokens."""
    return token[1:] if token.startswith("««") else token


@dataclass(frozen=True)
class IngestSpec:
    """How to read one delimited file.

    ``numeric_columns`` is None (everything categorical), "auto" (a column is
    numeric when all its non-missing values parse as finite numbers), or an
    explicit collection of column indices/names. ``label_column`` (index or
    header name) is pulled out of the attributes and kept as per-record class
    labels.
    """

    delimiter: str = ","
    has_header: bool = False
    label_column: int | str | None = None
    numeric_columns: str | Collection[int | str] | None = None
    bins: int = 10
    missing_tokens: frozenset[str] = frozenset({"?", ""})

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise ValueError(f"bins must be at least 1, got {self.bins}")
        if isinstance(self.numeric_columns, str) and self.numeric_columns != "auto":
            raise ValueError(
                f"numeric_columns must be None, 'auto' or a collection, got "
                f"{self.numeric_columns!r}"
            )


def bin_equal_width(values: Sequence[float | None], bins: int) -> list[str]:
    """Map numerics onto 'bin0'..'bin<bins-1>' tokens on a fixed-width grid.

    The grid spans [min, max] of the non-missing entries with
    width = (max - min) / bins; an entry x lands in floor((x - min) / width),
    clamped into [0, bins - 1] so the maximum joins the top bin. A zero-range
    column maps everything to bin0. None entries become the missing token and
    stay out of the min/max computation; an all-missing column needs no grid.
    """
    if bins < 1:
        raise ValueError(f"bins must be at least 1, got {bins}")
    if len(values) == 0:
        raise ValueError("cannot bin an empty sequence")
    present = [v for v in values if v is not None]
    if not present:
        return [MISSING_TOKEN] * len(values)
    lo = min(present)
    width = (max(present) - lo) / bins
    tokens = []
    for v in values:
        if v is None:
            tokens.append(MISSING_TOKEN)
        elif width <= 0.0:
            tokens.append("bin0")
        else:
            tokens.append(f"bin{min(int((v - lo) // width), bins - 1)}")
    return tokens


def read_rows(
    path: str | Path, spec: IngestSpec
) -> tuple[list[str] | None, list[list[str]], list[int]]:
    """Read a delimited file into (header, rows, file row numbers)."""
    rows: list[list[str]] = []
    linenos: list[int] = []
    header: list[str] | None = None
    with open(path, newline="", encoding="utf-8") as handle:
        for lineno, cells in enumerate(csv.reader(handle, delimiter=spec.delimiter), start=1):
            if not cells:
                continue
            cells = [c.strip() for c in cells]
            if spec.has_header and header is None:
                header = cells
                continue
            if rows and len(cells) != len(rows[0]):
                raise ParseError(
                    f"expected {len(rows[0])} fields, found {len(cells)}", row=lineno
                )
            rows.append(cells)
            linenos.append(lineno)
    if not rows:
        raise ParseError(f"no data rows in {path}")
    if header is not None and len(header) != len(rows[0]):
        raise ParseError(f"header lists {len(header)} fields, rows have {len(rows[0])}")
    return header, rows, linenos


def _resolve_column(ref: int | str, header: list[str] | None, width: int, what: str) -> int:
    if isinstance(ref, int):
        if not 0 <= ref < width:
            raise ValueError(f"{what} index {ref} out of range for {width} columns")
        return ref
    if header is None:
        raise ValueError(f"{what} {ref!r} referenced by name, but the file has no header")
    try:
        return header.index(ref)
    except ValueError:
        raise ValueError(f"{what} {ref!r} not found in header {header}") from None


def _parse_numeric(raw: str, row: int, name: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"non-numeric value {raw!r} in numeric column {name!r}", row=row) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {raw!r} in numeric column {name!r}", row=row)
    return value


def dataset_from_rows(
    rows: Sequence[Sequence[str]],
    spec: IngestSpec,
    names: Sequence[str] | None = None,
    linenos: Sequence[int] | None = None,
) -> Dataset:
    """Turn raw delimited cells into a Dataset per the ingestion spec.

    ``linenos`` maps each row to its file row number for error locations.
    """
    if not rows:
        raise ParseError("no data rows")
    if linenos is None:
        linenos = range(1, len(rows) + 1)
    width = len(rows[0])
    header = list(names) if names is not None else None
    label_at = None
    if spec.label_column is not None:
        label_at = _resolve_column(spec.label_column, header, width, "label column")
    attr_cols = [j for j in range(width) if j != label_at]
    if not attr_cols:
        raise ValueError("no attribute columns left after removing the label column")
    attr_names = [header[j] if header else f"col{j}" for j in attr_cols]

    columns: list[list[str]] = [[r[j] for r in rows] for j in attr_cols]
    missing = [[cell in spec.missing_tokens for cell in col] for col in columns]

    numeric: set[int] = set()
    if spec.numeric_columns == "auto":
        for c, col in enumerate(columns):
            present = [v for v, miss in zip(col, missing[c]) if not miss]
            if not present:
                continue
            try:
                if all(math.isfinite(float(v)) for v in present):
                    numeric.add(c)
            except ValueError:
                continue
    elif spec.numeric_columns is not None:
        for ref in spec.numeric_columns:
            j = _resolve_column(ref, header, width, "numeric column")
            if j == label_at:
                raise ValueError("the label column cannot be numeric")
            numeric.add(attr_cols.index(j))

    token_columns: list[list[str]] = []
    for c, col in enumerate(columns):
        if c in numeric:
            parsed = [
                None
                if miss
                else _parse_numeric(v, linenos[i], attr_names[c])
                for i, (v, miss) in enumerate(zip(col, missing[c]))
            ]
            token_columns.append(bin_equal_width(parsed, spec.bins))
        else:
            token_columns.append(
                [MISSING_TOKEN if miss else escape_token(v) for v, miss in zip(col, missing[c])]
            )

    records = list(zip(*token_columns))
    labels = [r[label_at] for r in rows] if label_at is not None else None
    return Dataset.from_records(records, names=attr_names, labels=labels)


def load(path: str | Path, spec: IngestSpec | None = None) -> Dataset:
    """Load a delimited text file into a Dataset."""
    spec = spec or IngestSpec()
    header, rows, linenos = read_rows(path, spec)
    return dataset_from_rows(rows, spec, names=header, linenos=linenos)


def write_dataset(
    dataset: Dataset,
    path: str | Path,
    delimiter: str = ",",
    header: bool = False,
    include_labels: bool = True,
) -> None:
    """Write a dataset back to delimited text, labels in the last column.

    Stored tokens are unescaped and the missing token is written as "?", so a
    file produced here reloads to the same dataset under a default IngestSpec
    (plus label_column when labels are present).
    """
    with_labels = include_labels and dataset.labels is not None
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=delimiter)
        if header:
            names = [a.name for a in dataset.schema]
            writer.writerow(names + (["label"] if with_labels else []))
        for i, record in enumerate(dataset.iter_records()):
            cells = ["?" if tok == MISSING_TOKEN else unescape_token(tok) for tok in record]
            if with_labels:
                cells.append(dataset.labels[i])
            writer.writerow(cells)


@dataclass(frozen=True)
class SynthSpec:
    """Shape of a synthetic clustered categorical dataset."""

    rows: int
    attributes: int
    values_per_attribute: int
    classes: int
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("rows", "attributes", "values_per_attribute", "classes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


def generate(spec: SynthSpec) -> Dataset:
    """Generate clustered categorical data, reproducible from the seed.

    Each record is assigned to one of ``classes`` clusters; per cluster and
    attribute one dominant value carries probability DOMINANT_SHARE and the
    remaining values split the rest uniformly. Labels carry the cluster id,
    which makes small clusters usable as rare classes in evaluation.
    """
    n, m, p = spec.rows, spec.attributes, spec.values_per_attribute
    rng = np.random.default_rng(spec.seed)
    clusters = rng.integers(spec.classes, size=n)
    dominant = rng.integers(p, size=(spec.classes, m))
    if p == 1:
        codes = np.zeros((n, m), dtype=np.int32)
    else:
        u = rng.random((n, m))
        alternative = rng.integers(p - 1, size=(n, m))
        dom = dominant[clusters]
        alternative = alternative + (alternative >= dom)
        codes = np.where(u < DOMINANT_SHARE, dom, alternative).astype(np.int32)
    schema = [
        AttributeSchema(f"a{j}", tuple(f"v{v}" for v in range(p))) for j in range(m)
    ]
    labels = [f"c{c}" for c in clusters]
    return Dataset(codes, schema, labels=labels)
