"""Element-based contingency counts, precision/recall/F, and the pair baseline.

Closeness between two classes is scored from the presence or absence of
individual words in each, never from word pairs; the pair-cooccurrence
scheme is kept only as a baseline because it undercounts overlapping
classes (a pair appearing in several classes is still one pair).
"""

from __future__ import annotations

from collections.abc import Set as AbstractSet
from dataclasses import dataclass
from itertools import combinations

from .model import Clustering


@dataclass(frozen=True)
class ContingencyTable:
    """YES-YES / YES-NO / NO-YES counts; the NO-NO cell carries no signal."""

    yy: int
    yn: int
    ny: int

    def __post_init__(self):
        if self.yy < 0 or self.yn < 0 or self.ny < 0:
            raise ValueError("contingency counts must be nonnegative")

    def __add__(self, other: "ContingencyTable") -> "ContingencyTable":
        return ContingencyTable(self.yy + other.yy, self.yn + other.yn, self.ny + other.ny)


@dataclass(frozen=True)
class Scores:
    precision: float
    recall: float
    f_measure: float


def contingency(a: AbstractSet, b: AbstractSet) -> ContingencyTable:
    """Cross-tabulate element membership of two sets: (|a∩b|, |a\\b|, |b\\a|)."""
    yy = len(a & b)
    return ContingencyTable(yy, len(a) - yy, len(b) - yy)


def f_measure(precision: float, recall: float) -> float:
    """Balanced harmonic mean; 0 when both inputs are 0."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def scores(table: ContingencyTable) -> Scores:
    """Precision, recall, and F for one table; zero denominators score 0."""
    marked = table.yy + table.yn
    actual = table.yy + table.ny
    p = table.yy / marked if marked else 0.0
    r = table.yy / actual if actual else 0.0
    return Scores(p, r, f_measure(p, r))


def co_classified_pairs(clustering: Clustering) -> frozenset[tuple[str, str]]:
    """All unordered word pairs sharing at least one class, deduplicated."""
    pairs: set[tuple[str, str]] = set()
    for cls in clustering.classes:
        pairs.update(combinations(sorted(cls.member_set), 2))
    return frozenset(pairs)


def pair_baseline(
    system: Clustering, expert: Clustering
) -> tuple[ContingencyTable, Scores]:
    """Compare two clusterings by co-classified word pairs.

    Sound for partitions; for overlapping input the counts are lossy
    because each pair is counted once no matter how many classes repeat
    it. Callers should check ``Clustering.is_partition`` and warn.
    """
    table = contingency(co_classified_pairs(system), co_classified_pairs(expert))
    return table, scores(table)
