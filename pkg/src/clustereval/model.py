"""Domain model: word clusterings, expert hierarchies, and their JSON files.

A clustering document holds a flat list of labeled word classes (the system
side); a hierarchy document has the same shape with optional nested
``children`` (the expert side). Words and labels are NFC-normalized and
stripped of surrounding whitespace before any comparison; everything else is
an exact, case-sensitive string match.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from functools import cached_property

INHERIT = "inherit"
OWN_ONLY = "own-only"
FLATTEN_MODES = (INHERIT, OWN_ONLY)


class DocumentError(ValueError):
    """Malformed or invalid input document; carries a JSON-path location."""

    def __init__(self, location: str, reason: str):
        super().__init__(f"{location}: {reason}")
        self.location = location
        self.reason = reason


@dataclass(frozen=True)
class LabeledClass:
    """A named, duplicate-free collection of words, kept in document order."""

    label: str
    members: tuple[str, ...]

    @cached_property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Clustering:
    """An ordered list of classes; classes may overlap (not a partition)."""

    name: str
    classes: tuple[LabeledClass, ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.classes)

    def is_partition(self) -> bool:
        """True when no word occurs in more than one class."""
        seen: set[str] = set()
        for cls in self.classes:
            for word in cls.members:
                if word in seen:
                    return False
                seen.add(word)
        return True

    def total_incidences(self) -> int:
        """Total (class, word) memberships; overlapping words count once per class."""
        return sum(len(c) for c in self.classes)


@dataclass(frozen=True)
class HierarchyNode:
    label: str
    own_members: tuple[str, ...]
    children: tuple["HierarchyNode", ...] = ()


@dataclass(frozen=True)
class ExpertHierarchy:
    """Tree of labeled classes; a flat clustering is the no-children case."""

    name: str
    roots: tuple[HierarchyNode, ...]

    def node_count(self) -> int:
        def count(node: HierarchyNode) -> int:
            return 1 + sum(count(c) for c in node.children)

        return sum(count(r) for r in self.roots)


@dataclass(frozen=True)
class Column:
    """One flattened hierarchy node: its label path and effective word set."""

    path: tuple[str, ...]
    members: frozenset[str]

    @property
    def label(self) -> str:
        return self.path[-1]

    def path_str(self) -> str:
        return "/".join(self.path)


@dataclass(frozen=True)
class ColumnList:
    """Pre-order list of flattened columns, one per hierarchy node."""

    mode: str
    columns: tuple[Column, ...]

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def __getitem__(self, index: int) -> Column:
        return self.columns[index]

    def is_top_level(self, index: int) -> bool:
        return len(self.columns[index].path) == 1

    def is_leaf(self, index: int) -> bool:
        # Pre-order: a node has children iff the next column sits deeper.
        if index + 1 >= len(self.columns):
            return True
        return len(self.columns[index + 1].path) <= len(self.columns[index].path)


def normalize_token(raw: str) -> str:
    """Strip surrounding whitespace and apply Unicode NFC; no case folding."""
    return unicodedata.normalize("NFC", raw.strip())


def _clean_string(value: object, location: str, what: str) -> str:
    if value is None:
        raise DocumentError(location, f"missing {what}")
    if not isinstance(value, str):
        raise DocumentError(location, f"{what} must be a string, got {type(value).__name__}")
    token = normalize_token(value)
    if not token:
        raise DocumentError(location, f"empty {what}")
    return token


def _parse_members(raw: object, location: str, allow_empty: bool) -> tuple[str, ...]:
    if raw is None:
        raw = []
    if not isinstance(raw, list):
        raise DocumentError(location, "members must be an array of strings")
    members: list[str] = []
    seen: set[str] = set()
    for i, item in enumerate(raw):
        word = _clean_string(item, f"{location}[{i}]", "member")
        if word in seen:
            raise DocumentError(f"{location}[{i}]", f"duplicate member {word!r}")
        seen.add(word)
        members.append(word)
    if not members and not allow_empty:
        raise DocumentError(location, "class has no members")
    return tuple(members)


def _parse_document(text: str) -> tuple[str, list]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"line {exc.lineno}, column {exc.colno}", f"invalid JSON: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise DocumentError("$", "top-level value must be an object")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("$.name", "name must be a string")
    classes = doc.get("classes")
    if not isinstance(classes, list) or not classes:
        raise DocumentError("$.classes", "classes must be a nonempty array")
    return name, classes


def parse_clustering(text: str) -> Clustering:
    """Parse and validate a flat clustering document (system side)."""
    name, raw_classes = _parse_document(text)
    labels: set[str] = set()
    classes: list[LabeledClass] = []
    for i, raw in enumerate(raw_classes):
        loc = f"$.classes[{i}]"
        if not isinstance(raw, dict):
            raise DocumentError(loc, "class must be an object")
        if "children" in raw:
            raise DocumentError(loc, "nested children are not accepted in a flat clustering")
        label = _clean_string(raw.get("label"), f"{loc}.label", "label")
        if label in labels:
            raise DocumentError(f"{loc}.label", f"duplicate label {label!r}")
        labels.add(label)
        members = _parse_members(raw.get("members"), f"{loc}.members", allow_empty=False)
        classes.append(LabeledClass(label, members))
    return Clustering(name, tuple(classes))


def parse_hierarchy(text: str) -> ExpertHierarchy:
    """Parse and validate a hierarchy document (expert side).

    A document with no ``children`` anywhere is a valid degenerate
    hierarchy. A node may omit its members only if it has children.
    """
    name, raw_roots = _parse_document(text)
    labels: set[str] = set()

    def parse_node(raw: object, loc: str) -> HierarchyNode:
        if not isinstance(raw, dict):
            raise DocumentError(loc, "node must be an object")
        label = _clean_string(raw.get("label"), f"{loc}.label", "label")
        if label in labels:
            raise DocumentError(f"{loc}.label", f"duplicate label {label!r}")
        labels.add(label)
        members = _parse_members(raw.get("members"), f"{loc}.members", allow_empty=True)
        raw_children = raw.get("children", [])
        if not isinstance(raw_children, list):
            raise DocumentError(f"{loc}.children", "children must be an array")
        children = tuple(
            parse_node(child, f"{loc}.children[{j}]") for j, child in enumerate(raw_children)
        )
        if not members and not children:
            raise DocumentError(loc, f"node {label!r} has neither members nor children")
        return HierarchyNode(label, members, children)

    roots = tuple(parse_node(raw, f"$.classes[{i}]") for i, raw in enumerate(raw_roots))
    return ExpertHierarchy(name, roots)


def serialize_clustering(clustering: Clustering) -> str:
    """Inverse of parse_clustering; preserves class and member order."""
    doc = {
        "name": clustering.name,
        "classes": [
            {"label": cls.label, "members": list(cls.members)} for cls in clustering.classes
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def serialize_hierarchy(hierarchy: ExpertHierarchy) -> str:
    """Inverse of parse_hierarchy; preserves node order."""

    def node_doc(node: HierarchyNode) -> dict:
        doc: dict = {"label": node.label, "members": list(node.own_members)}
        if node.children:
            doc["children"] = [node_doc(c) for c in node.children]
        return doc

    doc = {"name": hierarchy.name, "classes": [node_doc(r) for r in hierarchy.roots]}
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def as_flat_hierarchy(clustering: Clustering) -> ExpertHierarchy:
    """View a flat clustering as a degenerate one-level hierarchy."""
    roots = tuple(HierarchyNode(cls.label, cls.members) for cls in clustering.classes)
    return ExpertHierarchy(clustering.name, roots)


def flatten(hierarchy: ExpertHierarchy, mode: str = INHERIT) -> ColumnList:
    """Flatten a hierarchy into its pre-order column list.

    In ``inherit`` mode every column carries the union of its node's own
    words and all its descendants' words, so a parent contains each of its
    subclasses. In ``own-only`` mode a column carries just the node's own
    words.
    """
    if mode not in FLATTEN_MODES:
        raise ValueError(f"unknown flatten mode {mode!r}")
    columns: list[Column | None] = []

    def visit(node: HierarchyNode, prefix: tuple[str, ...]) -> set[str]:
        path = prefix + (node.label,)
        slot = len(columns)
        columns.append(None)  # reserve the pre-order position before recursing
        subtree = set(node.own_members)
        for child in node.children:
            subtree |= visit(child, path)
        effective = subtree if mode == INHERIT else set(node.own_members)
        if mode == INHERIT and not effective:
            raise ValueError(f"node {node.label!r} has an empty effective member set")
        columns[slot] = Column(path, frozenset(effective))
        return subtree

    for root in hierarchy.roots:
        visit(root, ())
    return ColumnList(mode, tuple(columns))  # type: ignore[arg-type]
