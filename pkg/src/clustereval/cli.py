"""Command-line front end: evaluate, table, sweep, and baseline commands.

All reports are rendered into one string and written in a single step, so
identical inputs and flags always produce byte-identical output. Text
reports round precision/recall to two-decimal percentages and F to two
decimals; JSON reports carry full precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .aggregate import ALL_COLUMNS, UNMAPPED_POLICIES, EvaluationReport, aggregate
from .mapping import DEFAULT_THRESHOLD, FTable, MappingResult, build_f_table, resolve_conflicts
from .metrics import co_classified_pairs, pair_baseline
from .model import (
    FLATTEN_MODES,
    INHERIT,
    DocumentError,
    flatten,
    parse_clustering,
    parse_hierarchy,
)

SWEEP_HEADER = "expert,threshold,mapped_pairs,precision,recall,f_measure"


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}"


def _f2(x: float) -> str:
    return f"{x:.2f}"


def _cell(x: float) -> str:
    return f"{x:.4f}"


def _path_str(path: tuple[str, ...]) -> str:
    return "/".join(path)


def render_evaluation_text(system_path: str, expert_path: str, report: EvaluationReport) -> str:
    lines = [f"evaluation: {system_path} vs {expert_path}"]
    lines.append(
        f"config: threshold={report.threshold:g} flatten={report.flatten_mode}"
        f" unmapped-cols={report.unmapped_policy}"
    )
    lines.append(f"mapped pairs ({len(report.per_pair)}):")
    for pair in report.per_pair:
        t, s = pair.table, pair.scores
        lines.append(
            f"  {pair.system_label} -> {_path_str(pair.expert_path)}"
            f"  yy={t.yy} yn={t.yn} ny={t.ny}"
            f"  P={_pct(s.precision)} R={_pct(s.recall)} F={_f2(s.f_measure)}"
        )
    if report.unmapped_system:
        listed = ", ".join(f"{label}({size})" for label, size in report.unmapped_system)
        lines.append(f"unmapped system classes: {listed}")
    if report.unmapped_expert:
        listed = ", ".join(f"{_path_str(path)}({size})" for path, size in report.unmapped_expert)
        lines.append(f"unmapped expert columns: {listed}")
    o, s = report.overall, report.overall_scores
    lines.append(f"overall: yy={o.yy} yn={o.yn} ny={o.ny}")
    lines.append(
        f"precision={_pct(s.precision)} recall={_pct(s.recall)} f-measure={_f2(s.f_measure)}"
    )
    return "\n".join(lines) + "\n"


def render_summary_text(entries: list[tuple[str, EvaluationReport]]) -> str:
    width = max(len("expert"), *(len(path) for path, _ in entries))
    lines = ["summary:"]
    lines.append(f"{'expert':<{width}}  {'precision':>9}  {'recall':>9}  {'f-measure':>9}")
    for path, report in entries:
        s = report.overall_scores
        lines.append(
            f"{path:<{width}}  {_pct(s.precision):>9}  {_pct(s.recall):>9}"
            f"  {_f2(s.f_measure):>9}"
        )
    return "\n".join(lines) + "\n"


def render_trace_text(table: FTable, mapping: MappingResult) -> str:
    lines = ["trace:"]
    if not mapping.trace:
        lines.append("  (no re-maps)")
    for event in mapping.trace:
        source = _path_str(table.col_paths[event.from_col])
        dest = "unmapped" if event.to_col is None else _path_str(table.col_paths[event.to_col])
        lines.append(
            f"  {table.row_labels[event.row]}: {source} -> {dest}  loss={event.loss:.4f}"
        )
    return "\n".join(lines) + "\n"


def render_table_text(
    system_path: str, expert_path: str, table: FTable, mapping: MappingResult
) -> str:
    headers = [_path_str(p) for p in table.col_paths]
    row_width = max(len(label) for label in table.row_labels)
    widths = [max(len(h), 6) for h in headers]
    lines = [
        f"f-table: {system_path} vs {expert_path}"
        f" ({table.n_rows} rows x {table.n_cols} cols, threshold={mapping.threshold:g})"
    ]
    lines.append(" " * row_width + "  " + "  ".join(h.rjust(w) for h, w in zip(headers, widths)))
    for r, label in enumerate(table.row_labels):
        cells = "  ".join(_cell(table.cells[r][c]).rjust(w) for c, w in enumerate(widths))
        lines.append(f"{label:<{row_width}}  {cells}")
    remapped = {event.row for event in mapping.trace}
    lines.append("mapping:")
    if not mapping.pairs:
        lines.append("  (none)")
    for row, col, f in mapping.pairs:
        marker = "  (re-mapped)" if row in remapped else ""
        lines.append(
            f"  {table.row_labels[row]} -> {_path_str(table.col_paths[col])}  F={_cell(f)}{marker}"
        )
    if mapping.unmapped_rows:
        listed = ", ".join(table.row_labels[r] for r in mapping.unmapped_rows)
        lines.append(f"unmapped rows: {listed}")
    if mapping.unmapped_cols:
        listed = ", ".join(_path_str(table.col_paths[c]) for c in mapping.unmapped_cols)
        lines.append(f"unmapped cols: {listed}")
    return "\n".join(lines) + "\n"


def _trace_doc(table: FTable, mapping: MappingResult) -> list[dict]:
    return [
        {
            "system_class": table.row_labels[event.row],
            "from_column": _path_str(table.col_paths[event.from_col]),
            "to_column": None if event.to_col is None else _path_str(table.col_paths[event.to_col]),
            "loss": event.loss,
        }
        for event in mapping.trace
    ]


def evaluation_to_dict(
    expert_path: str,
    report: EvaluationReport,
    table: FTable,
    mapping: MappingResult,
    include_trace: bool,
) -> dict:
    o, s = report.overall, report.overall_scores
    doc = {
        "expert": expert_path,
        "config": {
            "threshold": report.threshold,
            "flatten_mode": report.flatten_mode,
            "unmapped_columns_policy": report.unmapped_policy,
        },
        "overall": {
            "yy": o.yy,
            "yn": o.yn,
            "ny": o.ny,
            "precision": s.precision,
            "recall": s.recall,
            "f_measure": s.f_measure,
        },
        "pairs": [
            {
                "system_class": pair.system_label,
                "expert_column": _path_str(pair.expert_path),
                "yy": pair.table.yy,
                "yn": pair.table.yn,
                "ny": pair.table.ny,
                "precision": pair.scores.precision,
                "recall": pair.scores.recall,
                "f_measure": pair.scores.f_measure,
            }
            for pair in report.per_pair
        ],
        "unmapped_system": [
            {"label": label, "size": size} for label, size in report.unmapped_system
        ],
        "unmapped_expert": [
            {"column": _path_str(path), "size": size} for path, size in report.unmapped_expert
        ],
    }
    if include_trace:
        doc["trace"] = _trace_doc(table, mapping)
    return doc


def cmd_evaluate(args: argparse.Namespace) -> int:
    system = parse_clustering(_read(args.system))
    experts = [(path, parse_hierarchy(_read(path))) for path in args.expert]

    blocks: list[str] = []
    docs: list[dict] = []
    summary: list[tuple[str, EvaluationReport]] = []
    for expert_path, hierarchy in experts:
        columns = flatten(hierarchy, args.flatten)
        table = build_f_table(system, columns)
        mapping = resolve_conflicts(table, args.threshold)
        report = aggregate(system, columns, mapping, args.unmapped_cols)
        summary.append((expert_path, report))
        if args.format == "json":
            docs.append(evaluation_to_dict(expert_path, report, table, mapping, args.trace))
        else:
            block = render_evaluation_text(args.system, expert_path, report)
            if args.trace:
                block += render_trace_text(table, mapping)
            blocks.append(block)

    if args.format == "json":
        out = json.dumps({"system": args.system, "experts": docs}, indent=2) + "\n"
    else:
        out = "\n".join(blocks)
        if len(summary) > 1:
            out += "\n" + render_summary_text(summary)
    sys.stdout.write(out)
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    system = parse_clustering(_read(args.system))
    experts = [(path, parse_hierarchy(_read(path))) for path in args.expert]

    blocks: list[str] = []
    docs: list[dict] = []
    for expert_path, hierarchy in experts:
        columns = flatten(hierarchy, args.flatten)
        table = build_f_table(system, columns)
        mapping = resolve_conflicts(table, args.threshold)
        if args.format == "json":
            doc = {
                "expert": expert_path,
                "threshold": mapping.threshold,
                "rows": list(table.row_labels),
                "columns": [_path_str(p) for p in table.col_paths],
                "cells": [list(row) for row in table.cells],
                "mapping": {
                    "pairs": [
                        {
                            "system_class": table.row_labels[row],
                            "expert_column": _path_str(table.col_paths[col]),
                            "f_measure": f,
                        }
                        for row, col, f in mapping.pairs
                    ],
                    "unmapped_rows": [table.row_labels[r] for r in mapping.unmapped_rows],
                    "unmapped_cols": [_path_str(table.col_paths[c]) for c in mapping.unmapped_cols],
                },
            }
            if args.trace:
                doc["trace"] = _trace_doc(table, mapping)
            docs.append(doc)
        else:
            block = render_table_text(args.system, expert_path, table, mapping)
            if args.trace:
                block += render_trace_text(table, mapping)
            blocks.append(block)

    if args.format == "json":
        out = json.dumps({"system": args.system, "experts": docs}, indent=2) + "\n"
    else:
        out = "\n".join(blocks)
    sys.stdout.write(out)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    system = parse_clustering(_read(args.system))
    experts = [(path, parse_hierarchy(_read(path))) for path in args.expert]

    lines = [SWEEP_HEADER]
    for expert_path, hierarchy in experts:
        columns = flatten(hierarchy, args.flatten)
        table = build_f_table(system, columns)
        for threshold in args.thresholds:
            mapping = resolve_conflicts(table, threshold)
            report = aggregate(system, columns, mapping, args.unmapped_cols)
            s = report.overall_scores
            lines.append(
                f"{expert_path},{threshold!r},{len(mapping.pairs)}"
                f",{s.precision!r},{s.recall!r},{s.f_measure!r}"
            )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    system = parse_clustering(_read(args.system))
    expert = parse_clustering(_read(args.expert))
    table, s = pair_baseline(system, expert)

    lines = [f"pair baseline: {args.system} vs {args.expert}"]
    lines.append(
        f"system pairs={len(co_classified_pairs(system))}"
        f" expert pairs={len(co_classified_pairs(expert))}"
    )
    lines.append(f"contingency: yy={table.yy} yn={table.yn} ny={table.ny}")
    lines.append(
        f"precision={_pct(s.precision)} recall={_pct(s.recall)} f-measure={_f2(s.f_measure)}"
    )
    for path, clustering in ((args.system, system), (args.expert, expert)):
        if not clustering.is_partition():
            lines.append(
                f"warning: {path} is not a partition; overlapping pairs were deduplicated"
            )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _threshold_arg(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {raw!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"threshold must be in [0, 1], got {raw}")
    return value


def _threshold_list_arg(raw: str) -> list[float]:
    items = [part for part in raw.split(",") if part.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty threshold list")
    return [_threshold_arg(part.strip()) for part in items]


def _add_io_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", required=True, metavar="PATH", help="system clustering file")
    parser.add_argument(
        "--expert",
        required=True,
        action="append",
        metavar="PATH",
        help="expert hierarchy file (repeatable)",
    )
    parser.add_argument(
        "--flatten", choices=FLATTEN_MODES, default=INHERIT, help="hierarchy flattening mode"
    )
    parser.add_argument(
        "--unmapped-cols",
        dest="unmapped_cols",
        choices=UNMAPPED_POLICIES,
        default=ALL_COLUMNS,
        help="which unmapped expert columns count toward NO-YES",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clustereval",
        description="Evaluate system word classes against expert gold clusterings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="overall precision/recall/F per expert")
    _add_io_arguments(p)
    p.add_argument("--threshold", type=_threshold_arg, default=DEFAULT_THRESHOLD)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", action="store_true", help="include re-map events")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("table", help="dump the F-measure table and resolved mapping")
    _add_io_arguments(p)
    p.add_argument("--threshold", type=_threshold_arg, default=DEFAULT_THRESHOLD)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", action="store_true", help="include re-map events")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="CSV of scores across thresholds")
    _add_io_arguments(p)
    p.add_argument(
        "--thresholds",
        type=_threshold_list_arg,
        required=True,
        metavar="LIST",
        help="comma-separated thresholds, each in [0, 1]",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("baseline", help="pair-cooccurrence baseline (flat inputs only)")
    p.add_argument("--system", required=True, metavar="PATH")
    p.add_argument("--expert", required=True, metavar="PATH")
    p.set_defaults(func=cmd_baseline)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # invariant violations; anything unexpected
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
