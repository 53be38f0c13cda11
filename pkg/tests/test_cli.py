from __future__ import annotations

import json

import pytest

from clustereval.cli import main

from conftest import CLASS_A_MEMBERS, CLASS_B_MEMBERS, clustering_doc, hierarchy_doc, node


@pytest.fixture
def golden_files(tmp_path):
    system = tmp_path / "sys.json"
    expert = tmp_path / "exp.json"
    system.write_text(clustering_doc([("A", CLASS_A_MEMBERS)]), encoding="utf-8")
    expert.write_text(clustering_doc([("B", CLASS_B_MEMBERS)]), encoding="utf-8")
    return str(system), str(expert)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_evaluate_golden_pair(capsys, golden_files):
    system, expert = golden_files
    code, out, _ = run(capsys, "evaluate", "--system", system, "--expert", expert)
    assert code == 0
    assert "precision=75.00 recall=54.55 f-measure=0.63" in out
    assert "yy=6 yn=2 ny=5" in out


def test_evaluate_self_comparison(capsys, golden_files):
    system, _ = golden_files
    code, out, _ = run(capsys, "evaluate", "--system", system, "--expert", system)
    assert code == 0
    assert "precision=100.00 recall=100.00 f-measure=1.00" in out


def test_evaluate_missing_expert_file(capsys, golden_files):
    system, _ = golden_files
    code, out, err = run(capsys, "evaluate", "--system", system, "--expert", "nope.json")
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_evaluate_malformed_document(capsys, tmp_path, golden_files):
    system, _ = golden_files
    bad = tmp_path / "bad.json"
    bad.write_text('{"classes": [{"label": "A", "members": ["x", "x"]}]}', encoding="utf-8")
    code, out, err = run(capsys, "evaluate", "--system", system, "--expert", str(bad))
    assert code == 2
    assert out == ""
    assert "$.classes[0].members[1]" in err


def test_evaluate_bad_threshold_flag(capsys, golden_files):
    system, expert = golden_files
    with pytest.raises(SystemExit) as exc:
        main(["evaluate", "--system", system, "--expert", expert, "--threshold", "1.5"])
    assert exc.value.code == 2


def test_evaluate_json_carries_full_precision(capsys, golden_files):
    system, expert = golden_files
    code, out, _ = run(
        capsys, "evaluate", "--system", system, "--expert", expert, "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    overall = doc["experts"][0]["overall"]
    assert overall["precision"] == 0.75
    assert overall["recall"] == 6 / 11
    assert overall["f_measure"] == 2 * 0.75 * (6 / 11) / (0.75 + 6 / 11)


def test_json_report_reproduces_text_numbers(capsys, tmp_path):
    # fixture with one mapped pair plus unmapped classes on both sides
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(
        clustering_doc([("A", CLASS_A_MEMBERS), ("D", ["qqq", "zzz"])]), encoding="utf-8"
    )
    expert.write_text(
        clustering_doc([("B", CLASS_B_MEMBERS), ("E", ["ppp", "rrr", "sss"])]),
        encoding="utf-8",
    )
    argv = ("evaluate", "--system", str(system), "--expert", str(expert))
    _, text_out, _ = run(capsys, *argv)
    _, json_out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(json_out)["experts"][0]

    for pair in doc["pairs"]:
        assert (
            f"{pair['system_class']} -> {pair['expert_column']}"
            f"  yy={pair['yy']} yn={pair['yn']} ny={pair['ny']}"
            f"  P={100 * pair['precision']:.2f} R={100 * pair['recall']:.2f}"
            f" F={pair['f_measure']:.2f}"
        ) in text_out
    for entry in doc["unmapped_system"]:
        assert f"{entry['label']}({entry['size']})" in text_out
    for entry in doc["unmapped_expert"]:
        assert f"{entry['column']}({entry['size']})" in text_out
    overall = doc["overall"]
    assert f"overall: yy={overall['yy']} yn={overall['yn']} ny={overall['ny']}" in text_out
    assert (
        f"precision={100 * overall['precision']:.2f}"
        f" recall={100 * overall['recall']:.2f}"
        f" f-measure={overall['f_measure']:.2f}"
    ) in text_out
    assert doc["unmapped_system"] and doc["unmapped_expert"]


def test_evaluate_multiple_experts_prints_summary(capsys, tmp_path, golden_files):
    system, expert = golden_files
    second = tmp_path / "exp2.json"
    second.write_text(clustering_doc([("Z", CLASS_A_MEMBERS)]), encoding="utf-8")
    code, out, _ = run(
        capsys, "evaluate", "--system", system, "--expert", expert, "--expert", str(second)
    )
    assert code == 0
    assert "summary:" in out
    assert out.count("evaluation:") == 2
    summary = out[out.index("summary:") :]
    assert "75.38" not in summary  # sanity: numbers come from these inputs
    assert "100.00" in summary and "54.55" in summary


def test_table_golden_pair(capsys, golden_files):
    system, expert = golden_files
    code, out, _ = run(capsys, "table", "--system", system, "--expert", expert)
    assert code == 0
    assert "0.6316" in out
    assert "A -> B  F=0.6316" in out


def test_table_disjoint_vocabularies(capsys, tmp_path):
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(clustering_doc([("A", ["a", "b"]), ("B", ["c"])]), encoding="utf-8")
    expert.write_text(clustering_doc([("X", ["x"]), ("Y", ["y", "z"])]), encoding="utf-8")
    code, out, _ = run(capsys, "table", "--system", str(system), "--expert", str(expert))
    assert code == 0
    assert out.count("0.0000") == 4
    assert "(none)" in out
    assert "unmapped rows: A, B" in out
    assert "unmapped cols: X, Y" in out


@pytest.fixture
def conflict_files(tmp_path):
    # S1 and S2 both prefer X; S2 steps down to Y at a loss of
    # F(S2,X) - F(S2,Y) = 0.8 - 0.4 = 0.4
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(
        clustering_doc([("S1", ["a", "b"]), ("S2", ["a", "b", "c"])]), encoding="utf-8"
    )
    expert.write_text(
        clustering_doc([("X", ["a", "b"]), ("Y", ["c", "d"])]), encoding="utf-8"
    )
    return str(system), str(expert)


def test_table_trace_shows_remap_event(capsys, conflict_files):
    system, expert = conflict_files
    code, out, _ = run(capsys, "table", "--system", system, "--expert", expert, "--trace")
    assert code == 0
    assert "S2 -> Y  F=0.4000  (re-mapped)" in out
    assert "S2: X -> Y  loss=0.4000" in out


def test_table_without_trace_flag_omits_events(capsys, conflict_files):
    system, expert = conflict_files
    _, out, _ = run(capsys, "table", "--system", system, "--expert", expert)
    assert "loss=" not in out
    assert "(re-mapped)" in out


def test_table_json_format_with_trace(capsys, conflict_files):
    system, expert = conflict_files
    code, out, _ = run(
        capsys, "table", "--system", system, "--expert", expert, "--format", "json", "--trace"
    )
    assert code == 0
    doc = json.loads(out)["experts"][0]
    assert doc["rows"] == ["S1", "S2"]
    assert doc["columns"] == ["X", "Y"]
    assert doc["cells"][0][0] == 1.0
    assert doc["mapping"]["pairs"] == [
        {"system_class": "S1", "expert_column": "X", "f_measure": 1.0},
        {"system_class": "S2", "expert_column": "Y", "f_measure": doc["cells"][1][1]},
    ]
    assert doc["trace"] == [
        {
            "system_class": "S2",
            "from_column": "X",
            "to_column": "Y",
            "loss": doc["cells"][1][0] - doc["cells"][1][1],
        }
    ]


def test_evaluate_json_trace_records_drop_outs(capsys, tmp_path):
    # both system classes fight over the only expert column; the loser
    # has nowhere to go and lands in the unmapped list
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(
        clustering_doc([("S1", ["a", "b"]), ("S2", ["a", "b", "c", "d", "e"])]),
        encoding="utf-8",
    )
    expert.write_text(clustering_doc([("X", ["a", "b"])]), encoding="utf-8")
    code, out, _ = run(
        capsys,
        "evaluate",
        "--system",
        str(system),
        "--expert",
        str(expert),
        "--format",
        "json",
        "--trace",
    )
    assert code == 0
    doc = json.loads(out)["experts"][0]
    assert doc["trace"] == [
        {"system_class": "S2", "from_column": "X", "to_column": None, "loss": doc["trace"][0]["loss"]}
    ]
    assert doc["unmapped_system"] == [{"label": "S2", "size": 5}]


def test_sweep_header_and_self_comparison(capsys, golden_files):
    system, _ = golden_files
    code, out, _ = run(
        capsys, "sweep", "--system", system, "--expert", system, "--thresholds", "0.0"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "expert,threshold,mapped_pairs,precision,recall,f_measure"
    assert lines[1] == f"{system},0.0,1,1.0,1.0,1.0"


def test_sweep_threshold_one_with_no_perfect_pair(capsys, golden_files):
    system, expert = golden_files
    code, out, _ = run(
        capsys, "sweep", "--system", system, "--expert", expert, "--thresholds", "1.0"
    )
    assert code == 0
    assert out.splitlines()[1] == f"{expert},1.0,0,0.0,0.0,0.0"


def test_sweep_matches_evaluate_at_same_threshold(capsys, golden_files):
    system, expert = golden_files
    _, json_out, _ = run(
        capsys, "evaluate", "--system", system, "--expert", expert, "--format", "json"
    )
    overall = json.loads(json_out)["experts"][0]["overall"]
    _, csv_out, _ = run(
        capsys, "sweep", "--system", system, "--expert", expert, "--thresholds", "0.2"
    )
    _, _, mapped, p, r, f = csv_out.splitlines()[1].split(",")
    assert int(mapped) == 1
    assert float(p) == overall["precision"]
    assert float(r) == overall["recall"]
    assert float(f) == overall["f_measure"]


def test_sweep_rejects_empty_threshold_list(golden_files):
    system, expert = golden_files
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--system", system, "--expert", expert, "--thresholds", ","])
    assert exc.value.code == 2


def test_baseline_identical_partitions(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(clustering_doc([("X", ["a", "b"]), ("Y", ["c"])]), encoding="utf-8")
    code, out, _ = run(capsys, "baseline", "--system", str(f), "--expert", str(f))
    assert code == 0
    assert "contingency: yy=1 yn=0 ny=0" in out
    assert "f-measure=1.00" in out
    assert "warning" not in out


def test_baseline_merged_class(capsys, tmp_path):
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(clustering_doc([("X", ["a", "b", "c"])]), encoding="utf-8")
    expert.write_text(clustering_doc([("P", ["a", "b"]), ("Q", ["c"])]), encoding="utf-8")
    code, out, _ = run(capsys, "baseline", "--system", str(system), "--expert", str(expert))
    assert code == 0
    assert "contingency: yy=1 yn=2 ny=0" in out
    assert "precision=33.33 recall=100.00" in out


def test_baseline_warns_on_overlapping_input(capsys, tmp_path):
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(
        clustering_doc([("X", ["a", "b"]), ("Y", ["b", "c"])]), encoding="utf-8"
    )
    expert.write_text(clustering_doc([("P", ["a", "b", "c"])]), encoding="utf-8")
    code, out, _ = run(capsys, "baseline", "--system", str(system), "--expert", str(expert))
    assert code == 0
    assert "not a partition" in out


def test_baseline_rejects_hierarchy_expert(capsys, tmp_path, golden_files):
    system, _ = golden_files
    expert = tmp_path / "h.json"
    expert.write_text(
        hierarchy_doc([node("T", ["a"], children=[node("U", ["b"])])]), encoding="utf-8"
    )
    code, out, err = run(capsys, "baseline", "--system", system, "--expert", str(expert))
    assert code == 2
    assert out == ""
    assert "children" in err


def test_output_is_deterministic(capsys, golden_files):
    system, expert = golden_files
    argv = ["evaluate", "--system", system, "--expert", expert, "--trace"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_flatten_and_policy_flags_are_honored(capsys, tmp_path):
    system = tmp_path / "s.json"
    expert = tmp_path / "e.json"
    system.write_text(clustering_doc([("S", ["zzz"])]), encoding="utf-8")
    expert.write_text(
        hierarchy_doc([node("ANIMAL", ["cat", "horse"], children=[node("PET", ["dog"])])]),
        encoding="utf-8",
    )
    _, all_cols, _ = run(capsys, "evaluate", "--system", str(system), "--expert", str(expert))
    assert "overall: yy=0 yn=1 ny=4" in all_cols
    _, leaves, _ = run(
        capsys,
        "evaluate",
        "--system",
        str(system),
        "--expert",
        str(expert),
        "--unmapped-cols",
        "leaves",
    )
    assert "overall: yy=0 yn=1 ny=1" in leaves
    _, own_only, _ = run(
        capsys,
        "evaluate",
        "--system",
        str(system),
        "--expert",
        str(expert),
        "--flatten",
        "own-only",
    )
    assert "overall: yy=0 yn=1 ny=3" in own_only
