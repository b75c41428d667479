import json

import rankreach.localization
from rankreach.cli import run
from rankreach.errors import StructureError

from .conftest import GRAPH_DIR

G1 = str(GRAPH_DIR / "g1.edges")
G2 = str(GRAPH_DIR / "g2.edges")
ISOLATED = str(GRAPH_DIR / "isolated.json")


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_intervals_csv(capsys):
    code, out, _ = invoke(capsys, "intervals", G1)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "node,lo,hi,lo_witness"
    assert lines[1] == "1,0.298246,0.403509,2"
    assert lines[2] == "2,0.387196,0.492459,3"
    assert lines[3] == "3,0.177901,0.314558,1"


def test_leaders_csv(capsys):
    code, out, _ = invoke(capsys, "leaders", G2)
    assert code == 0
    assert out.splitlines() == [
        "leader,witness_row",
        "1,1",
        "4,3",
        "5,5",
    ]


def test_competitors_pair_rows(capsys):
    code, out, _ = invoke(capsys, "competitors", "--pair", "1,2", G1)
    assert code == 0
    assert out.splitlines()[1] == "1,2,false,,"
    code, out, _ = invoke(capsys, "competitors", "--pair", "1,3", G1)
    assert out.splitlines()[1] == "1,3,true,1,3"


def test_competitors_full_scan(capsys):
    code, out, _ = invoke(capsys, "competitors", G1)
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 3
    assert sum(",true," in row for row in rows) == 1


def test_pagerank_uniform(capsys):
    code, out, _ = invoke(capsys, "pagerank", G1)
    assert code == 0
    assert out.splitlines() == [
        "node,pagerank",
        "1,0.333333",
        "2,0.432749",
        "3,0.233918",
    ]


def test_pagerank_with_vector_file(capsys, tmp_path):
    vfile = tmp_path / "v.txt"
    vfile.write_text("0.2\n0.3\n0.5\n")
    code, out, _ = invoke(capsys, "pagerank", "--v", str(vfile), G1)
    assert code == 0
    assert out.splitlines() == [
        "node,pagerank",
        "1,0.319298",
        "2,0.425054",
        "3,0.255648",
    ]


def test_xmatrix_csv(capsys):
    code, out, _ = invoke(capsys, "xmatrix", G1)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "node,1,2,3"
    assert lines[1] == "1,0.403509,0.418590,0.177901"


def test_sc_interval_csv(capsys):
    code, out, _ = invoke(
        capsys, "sc-interval", "--node", "2", "--epsilon", "0.01", G1
    )
    assert code == 0
    assert out.splitlines()[1] == "2,0.01,0.387879,0.491564"


def test_sc_interval_all_nodes(capsys):
    code, out, _ = invoke(capsys, "sc-interval", G1)
    assert code == 0
    assert len(out.splitlines()) == 4


def test_achieve_success(capsys):
    code, out, _ = invoke(
        capsys, "achieve", "--node", "1", "--target", "0.35", G1
    )
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert row[0] == "1"
    assert row[1] == "0.350000"
    assert row[2] == "0.350000"


def test_achieve_outside_interval_exits_1(capsys):
    code, _, err = invoke(
        capsys, "achieve", "--node", "1", "--target", "0.45", G1
    )
    assert code == 1
    assert "outside" in err
    assert "'1'" in err


def test_verify_report(capsys):
    code, out, _ = invoke(
        capsys, "verify", "--seed", "7", "--samples", "500", G1
    )
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["seed"] == 7
    assert set(report["nodes"]) == {"1", "2", "3"}
    for entry in report["nodes"].values():
        assert entry["violations"] == 0
        assert entry["lo"] < entry["observed_min"] <= entry["observed_max"] < entry["hi"]


def test_verify_requires_seed(capsys):
    code, _, err = invoke(capsys, "verify", G1)
    assert code == 1
    assert "--seed" in err


def test_verify_rejects_negative_seed(capsys):
    code, _, err = invoke(capsys, "verify", "--seed", "-3", G1)
    assert code == 1
    assert "seed" in err


def test_runs_are_byte_identical(capsys):
    _, first, _ = invoke(capsys, "intervals", G1)
    _, second, _ = invoke(capsys, "intervals", G1)
    assert first == second
    _, v1, _ = invoke(capsys, "verify", "--seed", "3", "--samples", "200", G1)
    _, v2, _ = invoke(capsys, "verify", "--seed", "3", "--samples", "200", G1)
    assert v1 == v2


def test_json_output_mode(capsys):
    code, out, _ = invoke(capsys, "intervals", "--output", "json", G1)
    assert code == 0
    rows = json.loads(out)
    assert rows[1] == {
        "node": "2", "lo": 0.387196, "hi": 0.492459, "lo_witness": "3",
    }


def test_json_graph_input_inferred_from_extension(capsys):
    code, out, _ = invoke(capsys, "intervals", ISOLATED)
    assert code == 0
    assert out.splitlines()[1].startswith("a,")


def test_explicit_format_flag(capsys, tmp_path):
    path = tmp_path / "graph.txt"
    path.write_text('{"nodes": ["a", "b"], "edges": [[0, 1], [1, 0]]}')
    code, out, _ = invoke(capsys, "intervals", "--format", "json", str(path))
    assert code == 0
    assert out.splitlines()[1].startswith("a,")


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text('{"alpha": 0.85, "v": [0.2, 0.3, 0.5]}')
    code, out, _ = invoke(capsys, "pagerank", "--config", str(cfg), G1)
    assert code == 0
    assert out.splitlines()[1] == "1,0.319298"
    # an explicit flag wins over the config value
    code, out2, _ = invoke(
        capsys, "pagerank", "--config", str(cfg), "--v", "uniform", G1
    )
    assert out2.splitlines()[1] == "1,0.333333"


def test_unknown_subcommand_exits_1(capsys):
    code, _, err = invoke(capsys, "frobnicate", G1)
    assert code == 1
    assert "usage" in err


def test_unknown_flag_exits_1(capsys):
    code, _, err = invoke(capsys, "intervals", "--bogus", G1)
    assert code == 1
    assert "usage" in err


def test_help_exits_0(capsys):
    code, out, _ = invoke(capsys, "--help")
    assert code == 0
    assert "SUBCOMMAND" in out


def test_missing_file_exits_1(capsys):
    code, _, err = invoke(capsys, "intervals", "nope.edges")
    assert code == 1
    assert "cannot read" in err


def test_parse_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("1 2\n1 2 3\n")
    code, _, err = invoke(capsys, "intervals", str(path))
    assert code == 1
    assert "line 2" in err


def test_alpha_out_of_range_exits_1(capsys):
    code, _, err = invoke(capsys, "intervals", "--alpha", "1.5", G1)
    assert code == 1
    assert "alpha" in err


def test_bad_vector_file_exits_1(capsys, tmp_path):
    vfile = tmp_path / "v.txt"
    vfile.write_text("0.5\nnot-a-number\n")
    code, _, err = invoke(capsys, "pagerank", "--v", str(vfile), G1)
    assert code == 1
    assert "one float per line" in err


def test_single_node_graph_intervals_exit_1(capsys, tmp_path):
    path = tmp_path / "one.edges"
    path.write_text("1 1\n")
    code, _, err = invoke(capsys, "intervals", str(path))
    assert code == 1
    assert "single-node" in err


def test_numerical_failure_exits_2_with_json_diagnostic(capsys, monkeypatch):
    def broken(fm):
        raise StructureError("synthetic breakdown", details={"worst_margin": -1.0})

    monkeypatch.setattr(rankreach.localization, "verify_structure", broken)
    code, _, err = invoke(capsys, "intervals", G1)
    assert code == 2
    diagnostic = json.loads(err)
    assert diagnostic["error"] == "StructureError"
    assert diagnostic["details"]["worst_margin"] == -1.0
