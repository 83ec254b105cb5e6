"""Top-k outlier detection for categorical data by entropy minimization.

Removing true outliers leaves a more regular dataset; this package searches
for the k records whose removal minimizes the summed per-attribute entropy of
the remainder, using fast swap-based local search with an exact enumeration
oracle, plus ingestion, rare-class evaluation, and a CLI.
"""

from ._kernel import COMPILED_AVAILABLE, available_engines, resolve_engine
from .entropy import SwapDelta, attribute_entropy, dataset_entropy, evaluate_swap
from .evaluate import (
    CoverageRow,
    RareClassSpec,
    coverage_table,
    format_coverage,
    rank_outliers,
    top_count,
)
from .ingest import (
    MISSING_TOKEN,
    IngestSpec,
    ParseError,
    SynthSpec,
    bin_equal_width,
    generate,
    load,
    write_dataset,
)
from .model import (
    AttributeSchema,
    Dataset,
    FrequencyTable,
    OutlierLabeling,
    apply_swap,
    build_frequency_table,
)
from .search import SearchConfig, SearchResult, exact_solve, lsa

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema",
    "COMPILED_AVAILABLE",
    "CoverageRow",
    "Dataset",
    "FrequencyTable",
    "IngestSpec",
    "MISSING_TOKEN",
    "OutlierLabeling",
    "ParseError",
    "RareClassSpec",
    "SearchConfig",
    "SearchResult",
    "SwapDelta",
    "SynthSpec",
    "apply_swap",
    "attribute_entropy",
    "available_engines",
    "bin_equal_width",
    "build_frequency_table",
    "coverage_table",
    "dataset_entropy",
    "evaluate_swap",
    "exact_solve",
    "format_coverage",
    "generate",
    "load",
    "lsa",
    "rank_outliers",
    "resolve_engine",
    "top_count",
    "write_dataset",
]
