import math
import random
from collections import Counter

import pytest

from entropy_outliers import Dataset


def naive_objective(dataset, outliers=()):
    """From-scratch objective over the kept records, in bits.

    Deliberately independent of the package's entropy code: token records,
    collections.Counter, math.log2.
    """
    out = set(outliers)
    kept = [dataset.record(i) for i in range(dataset.n) if i not in out]
    if not kept:
        return 0.0
    total = len(kept)
    value = 0.0
    for j in range(dataset.m):
        freq = Counter(rec[j] for rec in kept)
        value -= sum((c / total) * math.log2(c / total) for c in freq.values())
    return value


def random_dataset(rng: random.Random, n: int, m: int, p: int, with_labels=False):
    rows = [tuple(f"v{rng.randrange(p)}" for _ in range(m)) for _ in range(n)]
    labels = [f"c{rng.randrange(3)}" for _ in range(n)] if with_labels else None
    return Dataset.from_records(rows, labels=labels)


@pytest.fixture
def rng():
    return random.Random(20240615)
