"""Fold mapped pairs and unmapped classes into one overall score.

A single contingency table accumulates the per-pair counts of every
mapped (system class, expert column) pair; every member of an unmapped
system class then lands in YES-NO, and every member of an unmapped
expert column lands in NO-YES.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mapping import DEFAULT_THRESHOLD, MappingResult, build_f_table, resolve_conflicts
from .metrics import ContingencyTable, Scores, contingency, scores
from .model import INHERIT, Clustering, ColumnList, ExpertHierarchy, flatten

ALL_COLUMNS = "all-columns"
TOP_LEVEL = "top-level"
LEAVES = "leaves"
UNMAPPED_POLICIES = (ALL_COLUMNS, TOP_LEVEL, LEAVES)


@dataclass(frozen=True)
class PairOutcome:
    system_label: str
    expert_path: tuple[str, ...]
    table: ContingencyTable
    scores: Scores


@dataclass(frozen=True)
class EvaluationReport:
    """Overall counts and scores for one system-vs-expert run, plus the
    per-pair breakdown and the unmapped remainders that fed them."""

    overall: ContingencyTable
    overall_scores: Scores
    per_pair: tuple[PairOutcome, ...]
    unmapped_system: tuple[tuple[str, int], ...]
    unmapped_expert: tuple[tuple[tuple[str, ...], int], ...]
    threshold: float
    flatten_mode: str
    unmapped_policy: str


def aggregate(
    system: Clustering,
    columns: ColumnList,
    mapping: MappingResult,
    policy: str = ALL_COLUMNS,
) -> EvaluationReport:
    """Build the overall contingency table and scores for one run.

    ``policy`` selects which unmapped expert columns feed NO-YES:
    ``all-columns`` counts every one (the literal reading), ``top-level``
    only root-level columns, ``leaves`` only childless columns. With
    inherited flattening a word below an unmapped parent and an unmapped
    child is otherwise counted once per column, which is what the
    narrower policies exist to probe.
    """
    if policy not in UNMAPPED_POLICIES:
        raise ValueError(f"unknown unmapped-column policy {policy!r}")
    rows = sorted([row for row, _, _ in mapping.pairs] + list(mapping.unmapped_rows))
    cols = sorted([col for _, col, _ in mapping.pairs] + list(mapping.unmapped_cols))
    if rows != list(range(len(system.classes))) or cols != list(range(len(columns))):
        raise ValueError("mapping does not match this system clustering and column list")

    yy = yn = ny = 0
    per_pair: list[PairOutcome] = []
    for row, col, _f in mapping.pairs:
        cls = system.classes[row]
        column = columns[col]
        table = contingency(cls.member_set, column.members)
        per_pair.append(PairOutcome(cls.label, column.path, table, scores(table)))
        yy += table.yy
        yn += table.yn
        ny += table.ny

    unmapped_system = tuple(
        (system.classes[row].label, len(system.classes[row])) for row in mapping.unmapped_rows
    )
    yn += sum(size for _, size in unmapped_system)

    counted: list[tuple[tuple[str, ...], int]] = []
    for col in mapping.unmapped_cols:
        if policy == TOP_LEVEL and not columns.is_top_level(col):
            continue
        if policy == LEAVES and not columns.is_leaf(col):
            continue
        counted.append((columns[col].path, len(columns[col].members)))
    ny += sum(size for _, size in counted)

    overall = ContingencyTable(yy, yn, ny)
    return EvaluationReport(
        overall=overall,
        overall_scores=scores(overall),
        per_pair=tuple(per_pair),
        unmapped_system=unmapped_system,
        unmapped_expert=tuple(counted),
        threshold=mapping.threshold,
        flatten_mode=columns.mode,
        unmapped_policy=policy,
    )


def evaluate(
    system: Clustering,
    expert: ExpertHierarchy,
    threshold: float = DEFAULT_THRESHOLD,
    flatten_mode: str = INHERIT,
    policy: str = ALL_COLUMNS,
) -> EvaluationReport:
    """Full pipeline: flatten, score all pairs, resolve the mapping, aggregate."""
    columns = flatten(expert, flatten_mode)
    table = build_f_table(system, columns)
    mapping = resolve_conflicts(table, threshold)
    return aggregate(system, columns, mapping, policy)
