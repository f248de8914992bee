import json

import pytest

from k3forge.cli_report import (
    SECTIONS,
    Check,
    Report,
    SuiteConfig,
    build_parser,
    emit,
    main,
    run_suite,
)


FAST = ["lattices", "overlattice", "witnesses"]


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(trials=0)
    with pytest.raises(ValueError):
        SuiteConfig(seed=-1)
    assert list(SuiteConfig(seed=4, trials=2).seeds()) == [4, 5]
    assert list(SuiteConfig(seed=4).seeds(3)) == [4, 5, 6]


def test_check_validation():
    with pytest.raises(ValueError):
        Check("x", "anchor", "maybe")
    with pytest.raises(ValueError):
        Check("x", "", "pass")


def test_report_rejects_duplicate_ids_and_sorts_naturally():
    r = Report(SuiteConfig())
    r.add(Check("a/seed=10", "t", "pass"))
    r.add(Check("a/seed=2", "t", "fail"))
    with pytest.raises(ValueError):
        r.add(Check("a/seed=2", "t", "pass"))
    assert [c.id for c in r.sorted_checks()] == ["a/seed=2", "a/seed=10"]
    assert r.failed
    assert r.counts() == {"pass": 1, "fail": 1, "partial": 0, "skipped": 0}


def test_empty_report_emits():
    r = Report(SuiteConfig())
    data = json.loads(emit(r, "json"))
    assert data["checks"] == [] and data["summary"]["pass"] == 0
    assert "Summary" in emit(r, "md")
    with pytest.raises(ValueError):
        emit(r, "xml")


def test_unknown_selection():
    with pytest.raises(KeyError):
        run_suite(SuiteConfig(), ["bogus"])


def test_json_is_byte_identical_across_runs():
    cfg = SuiteConfig(trials=2)
    a = emit(run_suite(cfg, FAST), "json")
    b = emit(run_suite(cfg, FAST), "json")
    assert a == b
    data = json.loads(a)
    assert data["schema"] == "k3forge-report/1"
    assert all(c["status"] == "pass" for c in data["checks"])


def test_markdown_has_double_point_matrix():
    md = emit(run_suite(SuiteConfig(trials=1), ["double_points"]), "md")
    assert "| row | S at p | K at p2 | K at p1 | trials |" in md
    assert "| 18(0,0) | A17 ✓ | E6 ✓ | A11 ✓ | 1/1 |" in md


def test_sections_are_known():
    assert set(SECTIONS) == {"lattices", "frames", "pencils", "overlattice", "maps",
                             "double_points", "graphs", "del_pezzo", "witnesses"}


# -- command line ------------------------------------------------------------------------------

def test_cli_run_json_to_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", "--only", "lattices,overlattice", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["summary"]["pass"] == 27


def test_cli_run_markdown(capsys):
    assert main(["run", "--only", "witnesses", "--trials", "2", "--format", "md"]) == 0
    assert "## witnesses" in capsys.readouterr().out


def test_cli_run_unknown_section(capsys):
    assert main(["run", "--only", "nope"]) == 2
    assert "unknown selection" in capsys.readouterr().err


def test_cli_exit_status_reflects_failures(capsys):
    # the rank-eleven exceptional set does not match the listed double point
    assert main(["run", "--only", "graphs"]) == 1
    out = json.loads(capsys.readouterr().out)
    failed = [c["id"] for c in out["checks"] if c["status"] == "fail"]
    assert failed == ["graphs/11(7,1)/p1_chain"]


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("K3FORGE_SEED", "7")
    main(["run", "--only", "witnesses", "--trials", "1"])
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["seed"] == 7
    main(["run", "--only", "witnesses", "--trials", "1", "--seed", "3"])
    assert json.loads(capsys.readouterr().out)["config"]["seed"] == 3
    monkeypatch.setenv("K3FORGE_SEED", "x")
    with pytest.raises(SystemExit):
        main(["run", "--only", "witnesses"])


def test_cli_lattices(capsys):
    assert main(["lattices", "verify"]) == 0
    assert capsys.readouterr().out.count("pass") == 23


def test_cli_graph_check(capsys, tmp_path):
    assert main(["graphs", "check", "13(5,1)"]) == 0
    assert "pass" in capsys.readouterr().out
    g = tmp_path / "tiny.json"
    g.write_text(json.dumps({"curves": ["a", "b"], "edges": [["a", "b", 2]]}))
    assert main(["graphs", "check", str(g), "--expect", "2,2,0"]) == 1
    assert main(["graphs", "check", str(g)]) == 2
    assert main(["graphs", "check", "missing"]) == 2


def test_cli_fibrations(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"C": "u^5*v"}))
    assert main(["fibrations", "analyze", str(m)]) == 0
    out = capsys.readouterr().out
    assert "II*+II" in out and "Euler sum: 12" in out
    m.write_text("{}")
    assert main(["fibrations", "analyze", str(m)]) == 2
    assert main(["fibrations", "frames", "--rho", "13", "--trials", "1"]) == 0
    assert "D6+5A1" in capsys.readouterr().out
    assert main(["fibrations", "frames", "--rho", "9"]) == 2


@pytest.mark.parametrize("family", ["rank9", "HN", "rank10", "canonical"])
def test_cli_surfaces(family, capsys):
    assert main(["surfaces", "verify", "--family", family]) == 0


def test_cli_double_points_alias(capsys):
    assert main(["singularities", "table2", "--rho", "18", "--trials", "1"]) == 0
    assert "E6 ✓" in capsys.readouterr().out
    assert main(["singularities", "double-points", "--rho", "12", "--trials", "1"]) == 0


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
