"""Loaders for the two published benchmark files and the rare-class resample.

The raw files are not redistributed here; place them under ./data (or point
ENTROPY_OUTLIERS_DATA at a directory holding them):

  lymphography.data
      UCI Lymphography: 148 comma-separated records, class code (1-4) first,
      then 18 categorical attributes. Classes 1 and 4 are the rare ones.

  breast-cancer-wisconsin.data
      UCI Breast Cancer Wisconsin (original): 699 comma-separated records of
      sample id, 9 attributes valued 1-10 ("?" for missing), and a class code
      (2 = benign, 4 = malignant). Treated as fully categorical.
"""

from __future__ import annotations

import os
import random
from pathlib import Path

from .ingest import IngestSpec, MISSING_TOKEN, dataset_from_rows, load, read_rows
from .model import Dataset

LYMPHOGRAPHY_FILE = "lymphography.data"
BREAST_CANCER_FILE = "breast-cancer-wisconsin.data"

LYMPHOGRAPHY_RARE_LABELS = frozenset({"1", "4"})
BENIGN_LABEL = "2"
MALIGNANT_LABEL = "4"
MALIGNANT_SAMPLE_SIZE = 39


def data_dir() -> Path:
    return Path(os.environ.get("ENTROPY_OUTLIERS_DATA", "data"))


def load_lymphography(path: str | Path | None = None) -> Dataset:
    """The lymphography benchmark: 18 categorical attributes, class labels."""
    path = Path(path) if path is not None else data_dir() / LYMPHOGRAPHY_FILE
    return load(path, IngestSpec(label_column=0))


def load_breast_cancer(path: str | Path | None = None) -> Dataset:
    """The original breast cancer benchmark with the sample-id column dropped."""
    path = Path(path) if path is not None else data_dir() / BREAST_CANCER_FILE
    spec = IngestSpec(label_column=9)
    _, rows, linenos = read_rows(path, spec)
    rows = [r[1:] for r in rows]  # drop the sample id, keep 9 attributes + class
    return dataset_from_rows(rows, spec, linenos=linenos)


def resample_breast_cancer(dataset: Dataset, seed: int = 0) -> Dataset:
    """Rebuild the unbalanced benchmark variant used for rare-class scoring.

    Records with missing values are dropped; every usable benign record is
    kept and a seeded uniform sample of MALIGNANT_SAMPLE_SIZE malignant
    records joins them, preserving dataset order. The originally published
    resample is no longer downloadable, so this reconstruction matches its
    class ratio rather than its exact rows.
    """
    if dataset.labels is None:
        raise ValueError("the resample needs class labels")
    usable = [
        i for i in range(dataset.n) if MISSING_TOKEN not in dataset.record(i)
    ]
    benign = [i for i in usable if dataset.labels[i] == BENIGN_LABEL]
    malignant = [i for i in usable if dataset.labels[i] == MALIGNANT_LABEL]
    if len(malignant) < MALIGNANT_SAMPLE_SIZE:
        raise ValueError(
            f"need at least {MALIGNANT_SAMPLE_SIZE} usable malignant records, "
            f"found {len(malignant)}"
        )
    picked = random.Random(seed).sample(malignant, MALIGNANT_SAMPLE_SIZE)
    return dataset.subset(sorted(benign + picked))
