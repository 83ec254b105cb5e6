"""Entropy-descent local search and the exhaustive exact solver.

The search swaps one non-outlier against one current outlier whenever that
strictly lowers the objective, sweeping the records until a full pass makes
no move. The exact solver enumerates every size-k subset and is meant as a
small-instance correctness oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _kernel
from .entropy import dataset_entropy, surprisal_table
from .model import Dataset, OutlierLabeling, build_frequency_table

INIT_STRATEGIES = ("first", "random")


@dataclass(frozen=True)
class SearchConfig:
    """Search knobs.

    ``init`` picks the initial outlier set: "first" takes records 0..k-1,
    "random" draws k records with the given seed. ``initial_outliers``
    overrides both (warm start). A swap is accepted only when it improves the
    objective by more than ``epsilon``, which guarantees termination;
    ``max_sweeps`` is a safety cap on top of that (None = unlimited).
    """

    k: int
    init: str = "first"
    seed: int = 0
    epsilon: float = 1e-12
    max_sweeps: int | None = None
    engine: str = "auto"
    initial_outliers: Sequence[int] | None = None

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"k must be non-negative, got {self.k}")
        if self.init not in INIT_STRATEGIES:
            raise ValueError(f"init must be one of {INIT_STRATEGIES}, got {self.init!r}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_sweeps is not None and self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be at least 1, got {self.max_sweeps}")


@dataclass
class SearchResult:
    """Outcome of a search run.

    ``objective_trace`` records the objective after each accepted swap;
    ``capped`` tells whether the sweep cap stopped a still-improving search.
    """

    labeling: OutlierLabeling
    outlier_indices: list[int]
    sweeps: int
    swaps: int
    objective_trace: list[float]
    initial_objective: float
    capped: bool = False
    engine: str = "python"

    @property
    def objective(self) -> float:
        return self.labeling.objective

    @property
    def k(self) -> int:
        return len(self.outlier_indices)


def _initial_outliers(n: int, config: SearchConfig) -> list[int]:
    if config.initial_outliers is not None:
        idx = [int(i) for i in config.initial_outliers]
        if len(idx) != config.k:
            raise ValueError(f"{len(idx)} initial outliers given for k={config.k}")
        if len(set(idx)) != len(idx):
            raise ValueError("initial outliers must be distinct")
        for i in idx:
            if not 0 <= i < n:
                raise ValueError(f"initial outlier {i} out of range for {n} records")
        return idx
    if config.init == "first":
        return list(range(config.k))
    return random.Random(config.seed).sample(range(n), config.k)


def lsa(dataset: Dataset, config: SearchConfig) -> SearchResult:
    """Find k outliers whose removal minimizes the remaining entropy (locally).

    Phase 1 labels the initial k records as outliers and builds the frequency
    tables from the rest. Phase 2 repeatedly sweeps the non-outliers in index
    order, swapping each against the best of the current k outliers whenever
    the objective drops by more than epsilon, until a full sweep accepts
    nothing. The returned labeling is a local optimum of the single-swap
    neighborhood (unless the sweep cap hit first).
    """
    n = dataset.n
    if config.k > n:
        raise ValueError(f"k={config.k} exceeds the dataset size {n}")
    engine = _kernel.resolve_engine(config.engine)
    init = _initial_outliers(n, config)

    labeling = OutlierLabeling.from_indices(n, init)
    table = build_frequency_table(dataset, labeling)
    initial_objective = dataset_entropy(table)
    labeling.objective = initial_objective

    outliers = np.array(sorted(init), dtype=np.int64)
    kernel = _kernel.sweep_kernel(engine)
    objective, sweeps, swaps, trace, capped = kernel.run_sweeps(
        dataset.codes,
        labeling.flags,
        table.counts,
        outliers,
        surprisal_table(table.total),
        initial_objective,
        config.epsilon,
        config.max_sweeps or 0,
    )
    labeling.objective = float(objective)
    return SearchResult(
        labeling=labeling,
        outlier_indices=[int(i) for i in outliers],
        sweeps=int(sweeps),
        swaps=int(swaps),
        objective_trace=[float(x) for x in trace],
        initial_objective=initial_objective,
        capped=bool(capped),
        engine=engine,
    )


def exact_solve(dataset: Dataset, k: int, max_candidates: int = 2_000_000) -> SearchResult:
    """Minimize the objective exactly by enumerating all size-k outlier subsets.

    Ties go to the lexicographically smallest index subset. Refuses when
    C(n, k) exceeds ``max_candidates``; this is an oracle for small instances,
    not a scalable solver.
    """
    n = dataset.n
    if not 0 <= k <= n:
        raise ValueError(f"k must be between 0 and {n}, got {k}")
    n_candidates = math.comb(n, k)
    if n_candidates > max_candidates:
        raise ValueError(
            f"C({n},{k}) = {n_candidates} subsets exceeds the enumeration "
            f"cap {max_candidates}"
        )

    total = n - k
    full = build_frequency_table(dataset, OutlierLabeling(np.zeros(n, dtype=np.int8)))
    counts = full.counts
    cols = np.arange(dataset.m)
    codes = dataset.codes
    f = surprisal_table(total)

    best = math.inf
    best_subset: tuple[int, ...] = tuple(range(k))
    for subset in combinations(range(n), k):
        for i in subset:
            counts[cols, codes[i]] -= 1
        objective = float(f[counts].sum()) if total > 0 else 0.0
        if objective < best:
            best = objective
            best_subset = subset
        for i in subset:
            counts[cols, codes[i]] += 1

    labeling = OutlierLabeling.from_indices(n, best_subset, objective=best)
    return SearchResult(
        labeling=labeling,
        outlier_indices=list(best_subset),
        sweeps=0,
        swaps=0,
        objective_trace=[],
        initial_objective=best,
        capped=False,
        engine="exact",
    )
