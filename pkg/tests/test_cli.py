"""End-to-end command line checks, driven through main() in process."""

import io
import json
import sys

import pytest

from permlab.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def report_of(out):
    doc = json.loads(out)
    assert doc["schema"] == "permlab-report/1"
    assert doc["tool"]["name"] == "permlab"
    assert isinstance(doc["cap"], int)
    return doc["report"]


# analyze


def test_analyze_cycle_json(capsys):
    rc, out, _ = run_cli(
        capsys,
        "analyze",
        "--gens",
        "(1 2 3 4 5)",
        "--degree",
        "5",
        "--pass",
        "primitivity,suborbits",
        "--format",
        "json",
    )
    assert rc == 0
    report = report_of(out)
    assert report["degree"] == 5
    assert report["passes"]["primitivity"] == {"transitive": True, "primitive": True}
    assert report["passes"]["suborbits"]["subdegrees"] == [1, 1, 1, 1, 1]


def test_analyze_text_default_passes(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "--fixture", "cyclic_4")
    assert rc == 0
    assert "transitive: True" in out
    assert "primitive: False" in out
    assert "1 2 3 4" in out


def test_analyze_two_generators(capsys):
    rc, out, _ = run_cli(
        capsys,
        "analyze",
        "--gens",
        "(1 2)(3 4),(1 3)(2 4)",
        "--degree",
        "4",
        "--pass",
        "transitivity",
        "--format",
        "json",
    )
    assert rc == 0
    report = report_of(out)
    assert report["passes"]["transitivity"]["transitivity_degree"] == 1


def test_analyze_degree_one_note(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "--gens", "()", "--degree", "1")
    assert rc == 0
    assert "degree 1" in out


def test_analyze_unknown_pass_exits_2(capsys):
    rc, _, err = run_cli(capsys, "analyze", "--fixture", "cyclic_4", "--pass", "nope")
    assert rc == 2
    assert "unknown pass" in err


def test_analyze_gens_without_degree_exits_2(capsys):
    rc, _, err = run_cli(capsys, "analyze", "--gens", "(1 2)")
    assert rc == 2
    assert "--degree" in err


def test_analyze_jordan_dot(capsys):
    rc, out, _ = run_cli(
        capsys, "analyze", "--fixture", "pg_2_2", "--pass", "jordan", "--format", "dot"
    )
    assert rc == 0
    assert out.startswith("digraph inclusion {")
    assert "->" in out
    # the full point set sits above everything else
    assert 's1_2_3_4_5_6_7 [label="{1 2 3 4 5 6 7}"]' in out


def test_analyze_pass_without_graph_form_comments(capsys):
    rc, out, _ = run_cli(
        capsys, "analyze", "--fixture", "cyclic_4", "--pass", "orbits", "--format", "dot"
    )
    assert rc == 0
    assert out.strip() == "// pass orbits: no graph form"


def test_analyze_span_requires_points(capsys):
    rc, _, err = run_cli(capsys, "analyze", "--fixture", "pg_2_2", "--pass", "span")
    assert rc == 2
    assert "--points" in err


def test_analyze_span_of_two_plane_points_is_a_line(capsys):
    rc, out, _ = run_cli(
        capsys,
        "analyze",
        "--fixture",
        "pg_2_2",
        "--pass",
        "span",
        "--points",
        "1,2",
        "--format",
        "json",
    )
    assert rc == 0
    report = report_of(out)
    assert len(report["passes"]["span"]["span"]) == 3


# corpus


def test_corpus_list_has_at_least_twenty(capsys):
    rc, out, _ = run_cli(capsys, "corpus", "list", "--format", "json")
    assert rc == 0
    report = report_of(out)
    names = [row["name"] for row in report["fixtures"]]
    assert report["count"] >= 20
    assert len(names) == len(set(names))
    assert "pg_2_2" in names and "cyclic_3" in names


def test_corpus_describe_plane(capsys):
    rc, out, _ = run_cli(capsys, "corpus", "describe", "pg_2_2", "--format", "json")
    assert rc == 0
    report = report_of(out)
    assert report["degree"] == 7
    assert report["order"] == 168
    assert len(report["lines"]) == 7
    assert all(len(line) == 3 for line in report["lines"])


def test_corpus_describe_unknown_exits_2(capsys):
    rc, _, err = run_cli(capsys, "corpus", "describe", "pg_9_9")
    assert rc == 2
    assert "fixture" in err


# suite


def test_suite_single_property_json(capsys):
    rc, out, _ = run_cli(capsys, "suite", "--filter", "dense", "--format", "json")
    assert rc == 0
    report = report_of(out)
    assert [p["name"] for p in report["properties"]] == ["dense-order-maps"]
    assert report["properties"][0]["passed"] is True


def test_suite_empty_filter_warns_and_exits_zero(capsys):
    rc, out, err = run_cli(capsys, "suite", "--filter", "zzz")
    assert rc == 0
    assert "no properties match" in err
    assert "0/0" in out


def test_suite_json_is_byte_deterministic(capsys):
    rc1, out1, _ = run_cli(capsys, "suite", "--filter", "involution", "--format", "json")
    rc2, out2, _ = run_cli(capsys, "suite", "--filter", "involution", "--format", "json")
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_suite_seed_changes_sampling_not_verdicts(capsys):
    verdicts = {}
    for seed in ("7", "20260818"):
        rc, out, _ = run_cli(
            capsys, "suite", "--seed", seed, "--filter", "coset", "--format", "json"
        )
        assert rc == 0
        (prop,) = report_of(out)["properties"]
        verdicts[seed] = prop["passed"]
    assert verdicts == {"7": True, "20260818": True}


def test_suite_text_reports_failures_as_verdicts(capsys):
    rc, out, _ = run_cli(capsys, "suite", "--filter", "tree-relation")
    assert rc == 0
    assert out.startswith("FAIL tree-relation-axioms")
    assert "0/1 properties passed" in out


# exit codes


def test_cap_exhaustion_exits_3(capsys, monkeypatch):
    monkeypatch.setenv("PERMLAB_CAP", "10")
    rc, _, err = run_cli(capsys, "analyze", "--fixture", "pg_2_2", "--pass", "jordan")
    assert rc == 3
    assert "cap" in err


# wreath


def test_wreath_report(capsys):
    rc, out, _ = run_cli(
        capsys, "wreath", "--bottom", "cyclic_2", "--top", "cyclic_3", "--format", "json"
    )
    assert rc == 0
    report = report_of(out)
    assert report["degree"] == 6
    assert report["order"] == 24
    assert report["fibers"] == [[1, 2], [3, 4], [5, 6]]


def test_wreath_accepts_fixture_names(capsys):
    rc, out, _ = run_cli(
        capsys, "wreath", "--bottom", "cyclic_3", "--top", "symmetric_3", "--format", "json"
    )
    assert rc == 0
    assert report_of(out)["order"] == 3**3 * 6


def test_wreath_out_file(capsys, tmp_path):
    path = tmp_path / "product.json"
    rc, _, _ = run_cli(
        capsys, "wreath", "--bottom", "cyclic_2", "--top", "cyclic_2", "--out", str(path)
    )
    assert rc == 0
    doc = json.loads(path.read_text())
    assert doc["report"]["order"] == 8


def test_wreath_unknown_name_exits_2(capsys):
    rc, _, err = run_cli(capsys, "wreath", "--bottom", "mystery_9", "--top", "cyclic_2")
    assert rc == 2
    assert "unknown group" in err


# relations


def test_relations_chain_roundtrip(capsys, tmp_path):
    path = tmp_path / "chain.json"
    rc, out, _ = run_cli(
        capsys, "relations", "build", "--model", "chain", "--k", "2", "--s", "2"
    )
    assert rc == 0
    path.write_text(out)
    rc, out, _ = run_cli(
        capsys, "relations", "check", "--family", "C", "--input", str(path), "--format", "json"
    )
    assert rc == 0
    report = report_of(out)
    verdicts = {c["name"]: c["holds"] for c in report["checks"]}
    assert report["ok"] is False
    assert verdicts["C1"] and verdicts["C2"] and verdicts["C3"] and verdicts["C4"]
    assert not verdicts["C5"] and not verdicts["C6"]


def test_relations_words_roundtrip(capsys, tmp_path):
    path = tmp_path / "words.json"
    rc, out, _ = run_cli(
        capsys, "relations", "build", "--model", "words", "--values", "1,2", "--s", "2"
    )
    assert rc == 0
    path.write_text(out)
    rc, out, _ = run_cli(
        capsys, "relations", "check", "--family", "B", "--input", str(path), "--format", "json"
    )
    assert rc == 0
    assert report_of(out)["ok"] is True


def test_relations_check_reads_stdin(capsys, monkeypatch):
    from permlab.relations import relation_to_json
    from permlab.trees import finite_c_model

    text = relation_to_json(finite_c_model(1, 2).relation)
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    rc, out, _ = run_cli(capsys, "relations", "check", "--family", "C", "--input", "-")
    assert rc == 0
    assert "C1: pass" in out


def test_relations_build_missing_parameters_exit_2(capsys):
    rc, _, err = run_cli(capsys, "relations", "build", "--model", "chain", "--k", "2")
    assert rc == 2
    assert "--s" in err


# cantor


def test_cantor_places_values_in_carved_intervals(capsys):
    rc, out, _ = run_cli(capsys, "cantor", "--source", "0,1,1/2", "--target", "5,7,6")
    assert rc == 0
    assert "1/2 in (5, 7) -> 6" in out
    assert "exhausted: none" in out


def test_cantor_reports_exhaustion(capsys):
    rc, out, _ = run_cli(
        capsys, "cantor", "--source", "0,1,2", "--target", "5", "--format", "json"
    )
    assert rc == 0
    report = report_of(out)
    assert report["exhausted"] == "1"
    assert report["mapping"] == [["0", "5"]]


# lw


def test_lw_matrix_report(capsys):
    rc, out, _ = run_cli(capsys, "lw", "--n", "5", "--k", "2", "--format", "json")
    assert rc == 0
    report = report_of(out)
    assert report["rows"] == 10 and report["cols"] == 5
    assert report["rank"] == 5
    assert report["injective"] is True
    assert report["method"] == "exact"


def test_lw_csv_bytes(capsys):
    rc, out, _ = run_cli(capsys, "lw", "--n", "3", "--k", "2", "--csv")
    assert rc == 0
    assert out == "1,1,0\n1,0,1\n0,1,1"


def test_lw_theta_report(capsys):
    rc, out, _ = run_cli(capsys, "lw", "--n", "4", "--theta", "1,2,3", "--format", "json")
    assert rc == 0
    report = report_of(out)
    assert report["proportional"] is False
    assert report["scalar"] is None
    assert (report["rank_rs"], report["rank_st"], report["rank_rt"]) == (3, 3, 4)


def test_lw_needs_k_or_theta(capsys):
    rc, _, err = run_cli(capsys, "lw", "--n", "5")
    assert rc == 2
    assert "--theta" in err


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
