"""Longitudinal co-citation retrieval evaluation."""

from ._core import (
    ConfigError,
    DataError,
    Error,
    InvariantError,
    PatternTable,
    Snapshot,
    __version__,
    bm25_scores,
    build_snapshot,
    cocitation,
    drift,
    evaluate,
    extract_citations,
    pelt,
    predictions,
    strip_citations,
    ukrainian_pattern_config,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Error",
    "InvariantError",
    "PatternTable",
    "Snapshot",
    "__version__",
    "bm25_scores",
    "build_snapshot",
    "cocitation",
    "drift",
    "evaluate",
    "extract_citations",
    "pelt",
    "predictions",
    "strip_citations",
    "ukrainian_pattern_config",
]
