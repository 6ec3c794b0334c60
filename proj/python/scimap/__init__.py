"""Co-word science mapping toolkit."""

from ._core import (
    BibRecord,
    ClusterAssignment,
    Layout,
    MapResult,
    Network,
    ParseResult,
    PipelineConfig,
    ScimapError,
    SimilarityMatrix,
    Thesaurus,
    apply_thesaurus,
    association_strength,
    average_pub_date,
    build_network,
    canonical_transform,
    canonicalize_label,
    cluster,
    curation_round,
    emerging_filter,
    fractional_date,
    largest_component,
    mean_pairwise_distance,
    optimize_layout,
    parse_corpus,
    partition_quality,
    stress,
)

__all__ = [name for name in dir() if not name.startswith("_")]
