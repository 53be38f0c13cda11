"""F-measure table construction and the one-to-one class mapping.

Each system class starts on its best-scoring expert column; columns
claimed by several classes are repaired one re-map at a time, always
executing the re-map that sacrifices the least F-measure, until the
mapping is one-to-one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .metrics import contingency, scores
from .model import Clustering, ColumnList

DEFAULT_THRESHOLD = 0.20
BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class FTable:
    """Pairwise F-measures: one row per system class, one column per
    flattened expert class or subclass."""

    row_labels: tuple[str, ...]
    col_paths: tuple[tuple[str, ...], ...]
    cells: tuple[tuple[float, ...], ...]

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.col_paths)


@dataclass(frozen=True)
class RemapEvent:
    """One conflict resolution step: ``row`` gave up ``from_col`` for
    ``to_col`` (None = dropped out), sacrificing ``loss`` F-measure."""

    row: int
    from_col: int
    to_col: int | None
    loss: float


@dataclass(frozen=True)
class MappingResult:
    """An injective partial map from system rows to expert columns."""

    pairs: tuple[tuple[int, int, float], ...]
    unmapped_rows: tuple[int, ...]
    unmapped_cols: tuple[int, ...]
    threshold: float
    trace: tuple[RemapEvent, ...]

    def total_f(self) -> float:
        return sum(f for _, _, f in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return {row: col for row, col, _ in self.pairs}


def _check_threshold(threshold: float) -> None:
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")


def build_f_table(system: Clustering, columns: ColumnList) -> FTable:
    """Score every (system class, expert column) pair by F-measure."""
    if not system.classes or not len(columns):
        raise ValueError("need at least one system class and one expert column")
    col_sets = [col.members for col in columns]
    cells = tuple(
        tuple(scores(contingency(cls.member_set, cs)).f_measure for cs in col_sets)
        for cls in system.classes
    )
    return FTable(system.labels(), tuple(col.path for col in columns), cells)


def _best_column(row: tuple[float, ...], threshold: float, banned: set[int]) -> int | None:
    best = None
    best_f = -1.0
    for col, f in enumerate(row):
        if col in banned or f < threshold:
            continue
        if f > best_f:  # strict: equal cells keep the smaller column index
            best, best_f = col, f
    return best


def initial_potentials(
    table: FTable, threshold: float = DEFAULT_THRESHOLD
) -> tuple[int | None, ...]:
    """Per row, the best-F column at or above the threshold (ties go to
    the smaller column index); None when no column qualifies."""
    _check_threshold(threshold)
    return tuple(_best_column(row, threshold, set()) for row in table.cells)


def resolve_conflicts(table: FTable, threshold: float = DEFAULT_THRESHOLD) -> MappingResult:
    """Compute the one-to-one mapping by iterative minimal-loss repair.

    Start from every row's potential mapping. While some column has two
    or more claimants, work out what each claimant would lose by stepping
    down to its next-best eligible column — columns it lost earlier stay
    off limits, and a claimant with no alternative loses its whole
    current F-measure and drops out. Execute the single cheapest re-map
    (ties toward the smaller row, then column index) and look for
    conflicts again. Every re-map permanently bans the abandoned column
    for that row, which bounds the loop and guarantees termination.
    """
    _check_threshold(threshold)
    current: list[int | None] = list(initial_potentials(table, threshold))
    banned: list[set[int]] = [set() for _ in range(table.n_rows)]
    trace: list[RemapEvent] = []

    while True:
        claimants: dict[int, list[int]] = {}
        for row, col in enumerate(current):
            if col is not None:
                claimants.setdefault(col, []).append(row)
        candidates: list[tuple[float, int, int, int | None]] = []
        for col, rows in claimants.items():
            if len(rows) < 2:
                continue
            for row in rows:
                alt = _best_column(table.cells[row], threshold, banned[row] | {col})
                here = table.cells[row][col]
                loss = here if alt is None else here - table.cells[row][alt]
                candidates.append((loss, row, col, alt))
        if not candidates:
            break
        loss, row, col, alt = min(candidates, key=lambda c: (c[0], c[1], c[2]))
        banned[row].add(col)
        current[row] = alt
        trace.append(RemapEvent(row, col, alt, loss))

    pairs = tuple(
        (row, col, table.cells[row][col]) for row, col in enumerate(current) if col is not None
    )
    mapped_cols = {col for _, col, _ in pairs}
    return MappingResult(
        pairs=pairs,
        unmapped_rows=tuple(row for row, col in enumerate(current) if col is None),
        unmapped_cols=tuple(col for col in range(table.n_cols) if col not in mapped_cols),
        threshold=threshold,
        trace=tuple(trace),
    )


def brute_force_mapping(table: FTable, threshold: float = DEFAULT_THRESHOLD) -> MappingResult:
    """Exhaustively optimal one-to-one mapping, for cross-checking the
    greedy resolver on small instances.

    Considers every injective partial mapping whose pairs clear the
    threshold and returns one with maximal total F; equal totals resolve
    toward assigning earlier rows to smaller column indices, assignment
    preferred over leaving a row out. Implemented as exact dynamic
    programming over used-column bitmasks, which covers the same search
    space as literal enumeration.
    """
    _check_threshold(threshold)
    n, m = table.n_rows, table.n_cols
    if n > BRUTE_FORCE_LIMIT or m > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"instance too large to enumerate: {n}x{m} exceeds "
            f"{BRUTE_FORCE_LIMIT}x{BRUTE_FORCE_LIMIT}"
        )

    # best[r][mask] = max total F over rows r.. with the columns in mask taken
    size = 1 << m
    best = [[0.0] * size for _ in range(n + 1)]
    for r in range(n - 1, -1, -1):
        row = table.cells[r]
        for mask in range(size):
            top = best[r + 1][mask]  # leave row r unmapped
            for c in range(m):
                bit = 1 << c
                if mask & bit or row[c] < threshold:
                    continue
                value = row[c] + best[r + 1][mask | bit]
                if value > top:
                    top = value
            best[r][mask] = top

    current: list[int | None] = []
    mask = 0
    for r in range(n):
        row = table.cells[r]
        target = best[r][mask]
        choice = None
        for c in range(m):  # smallest qualifying column that still reaches the optimum
            bit = 1 << c
            if mask & bit or row[c] < threshold:
                continue
            if row[c] + best[r + 1][mask | bit] == target:
                choice = c
                mask |= bit
                break
        current.append(choice)

    pairs = tuple(
        (row, col, table.cells[row][col]) for row, col in enumerate(current) if col is not None
    )
    mapped_cols = {col for _, col, _ in pairs}
    return MappingResult(
        pairs=pairs,
        unmapped_rows=tuple(row for row, col in enumerate(current) if col is None),
        unmapped_cols=tuple(col for col in range(m) if col not in mapped_cols),
        threshold=threshold,
        trace=(),
    )
