import json

import pytest

from tensorcat import field, morfile
from tensorcat import twovect as tv
from tensorcat.cli import EXIT_LAW, EXIT_OK, EXIT_PARSE, EXIT_TYPE, demo_fixture, main


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "demo.mor"
    path.write_text(morfile.dump(demo_fixture(0)))
    return path


def test_compose_identity_then_normalize(fixture_file, capsys):
    assert main(["compose", str(fixture_file), "id(2) .h f", "--normalize"]) == EXIT_OK
    out = morfile.parse(capsys.readouterr().out)
    assert out.ones["result"] == demo_fixture(0).ones["f"]


def test_compose_unicode_identity(fixture_file, capsys):
    assert main(["compose", str(fixture_file), "id(2) ∘ f", "--normalize"]) == EXIT_OK
    assert morfile.parse(capsys.readouterr().out).ones["result"] == demo_fixture(0).ones["f"]


def test_compose_h_after_f(fixture_file, capsys):
    assert main(["compose", str(fixture_file), "h ∘ f"]) == EXIT_OK
    hf = morfile.parse(capsys.readouterr().out).ones["result"]
    h, f = demo_fixture(0).ones["h"], demo_fixture(0).ones["f"]
    assert hf[0, 0] == tv.tensor(h[0, 0], f[0, 0]) + tv.tensor(h[0, 1], f[1, 0])


def test_compose_block_entry(fixture_file, tmp_path):
    dest = tmp_path / "out.mor"
    assert main(["compose", str(fixture_file), "xi .h theta", "-o", str(dest)]) == EXIT_OK
    got = morfile.parse(dest.read_text()).twos["result"]
    doc = demo_fixture(0)
    assert got == tv.hcompose2(doc.twos["xi"], doc.twos["theta"])
    # entry (1,1) carries h11 f11 (+) h12 f21 as its source decomposition
    h, f = doc.ones["h"], doc.ones["f"]
    assert tv.total(got.src[0, 0]) == tv.total(h[0, 0]) * tv.total(f[0, 0]) + tv.total(h[0, 1]) * tv.total(f[1, 0])


def test_malformed_file_exits_parse(tmp_path, capsys):
    bad = tmp_path / "bad.mor"
    bad.write_text("object A = 1\none f : 1 -> 1\n  row [1 q]\nend\n")
    assert main(["compose", str(bad), "f"]) == EXIT_PARSE
    assert "line 3" in capsys.readouterr().err


def test_missing_file_exits_parse(tmp_path):
    assert main(["compose", str(tmp_path / "nope.mor"), "f"]) == EXIT_PARSE


def test_type_error_exits_type(fixture_file, capsys):
    assert main(["compose", str(fixture_file), "theta .v theta"]) == EXIT_TYPE
    assert "column" in capsys.readouterr().err


def test_check_laws_defaults_pass(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["check-laws", "--jobs", "4", "-o", str(report)]) == EXIT_OK
    data = json.loads(report.read_text())
    assert data["ok"] and data["config"]["cases_per_law"] == 200
    assert capsys.readouterr().out.rstrip().endswith("all laws hold")


def test_check_laws_with_no_cases(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["check-laws", "--cases", "0", "-o", str(report)]) == EXIT_OK
    assert json.loads(report.read_text())["laws"] == []


def test_check_laws_mutation_writes_counterexamples(tmp_path, capsys):
    folder = tmp_path / "cx"
    code = main(["check-laws", "--cases", "20", "--law", "interchange", "--mutate", "kron-flip",
                 "--counterexamples", str(folder)])
    assert code == EXIT_LAW
    files = sorted(folder.glob("interchange-*.mor"))
    assert files
    doc = morfile.parse(files[0].read_text())
    assert set(doc.twos) >= {"a", "b", "a2", "b2"}
    # the replay is clean once the mutation is off
    assert main(["compose", str(files[0]), "(b2 .v a2) .h (b .v a)"]) == EXIT_OK


def test_config_file_fills_defaults_and_flags_win(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cases": 3, "law": ["matk-addition"], "seed": 5}))
    report = tmp_path / "r.json"
    assert main(["--config", str(cfg), "check-laws", "--seed", "9", "-o", str(report)]) == EXIT_OK
    data = json.loads(report.read_text())
    assert data["config"]["cases_per_law"] == 3 and data["config"]["seed"] == 9
    assert [x["name"] for x in data["laws"]] == ["matk-addition"]


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"colour": 1}')
    assert main(["--config", str(cfg), "check-laws"]) == EXIT_PARSE


def test_bad_bound_exits_parse():
    assert main(["check-laws", "--max-dim", "0"]) == EXIT_PARSE


def test_demo_example(tmp_path, capsys):
    dest = tmp_path / "demo.mor"
    assert main(["demo-example", "-o", str(dest)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out
    assert morfile.parse(dest.read_text()).ones["f"] == demo_fixture(0).ones["f"]


def test_dnc_matmul_small_sizes(tmp_path, capsys):
    dest = tmp_path / "t.json"
    assert main(["dnc-matmul", "--sizes", "1", "9", "-o", str(dest)]) == EXIT_OK
    assert [r["equal"] for r in json.loads(dest.read_text())] == [True, True]
    assert main(["dnc-matmul", "--sizes", "64", "--threshold", "64"]) == EXIT_OK
    assert main(["dnc-matmul", "--sizes", "0"]) == EXIT_PARSE
