"""Evaluate system-generated, possibly overlapping word classes against
expert-provided gold clusterings, flat or hierarchical.

The pipeline: flatten the expert hierarchy into one column per class and
subclass, score every (system class, expert column) pair by element-based
F-measure, resolve the one-to-one mapping by iterative minimal-loss
conflict repair, then fold mapped pairs and unmapped remainders into a
single overall contingency table.
"""

from .aggregate import (
    ALL_COLUMNS,
    LEAVES,
    TOP_LEVEL,
    UNMAPPED_POLICIES,
    EvaluationReport,
    PairOutcome,
    aggregate,
    evaluate,
)
from .mapping import (
    BRUTE_FORCE_LIMIT,
    DEFAULT_THRESHOLD,
    FTable,
    MappingResult,
    RemapEvent,
    brute_force_mapping,
    build_f_table,
    initial_potentials,
    resolve_conflicts,
)
from .metrics import (
    ContingencyTable,
    Scores,
    co_classified_pairs,
    contingency,
    f_measure,
    pair_baseline,
    scores,
)
from .model import (
    FLATTEN_MODES,
    INHERIT,
    OWN_ONLY,
    Clustering,
    Column,
    ColumnList,
    DocumentError,
    ExpertHierarchy,
    HierarchyNode,
    LabeledClass,
    as_flat_hierarchy,
    flatten,
    normalize_token,
    parse_clustering,
    parse_hierarchy,
    serialize_clustering,
    serialize_hierarchy,
)
from .testkit import GenSpec, SplitMix64, gen_clustering, gen_hierarchy, perturb

__version__ = "0.1.0"

__all__ = [
    "ALL_COLUMNS",
    "BRUTE_FORCE_LIMIT",
    "Clustering",
    "Column",
    "ColumnList",
    "ContingencyTable",
    "DEFAULT_THRESHOLD",
    "DocumentError",
    "EvaluationReport",
    "ExpertHierarchy",
    "FLATTEN_MODES",
    "FTable",
    "GenSpec",
    "HierarchyNode",
    "INHERIT",
    "LEAVES",
    "LabeledClass",
    "MappingResult",
    "OWN_ONLY",
    "PairOutcome",
    "RemapEvent",
    "Scores",
    "SplitMix64",
    "TOP_LEVEL",
    "UNMAPPED_POLICIES",
    "aggregate",
    "as_flat_hierarchy",
    "brute_force_mapping",
    "build_f_table",
    "co_classified_pairs",
    "contingency",
    "evaluate",
    "f_measure",
    "flatten",
    "gen_clustering",
    "gen_hierarchy",
    "initial_potentials",
    "normalize_token",
    "pair_baseline",
    "parse_clustering",
    "parse_hierarchy",
    "perturb",
    "resolve_conflicts",
    "scores",
    "serialize_clustering",
    "serialize_hierarchy",
]
