import json

import pytest

from degen_atlas.cli import run


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["roots", "NOSUCH"])
    assert exc.value.code == 2


def test_roots_e8e8(capsys):
    code, rep = run_json(capsys, ["roots", "E8E8"])
    assert code == 0
    assert rep["type"] == "E8+E8+<-4>"
    assert rep["roots2_count"] == 480
    assert rep["odd_norm_members"] == 0
    assert rep["schema"] == "degen-atlas/1"


def test_chambers_a15_json_fields(capsys):
    code, rep = run_json(capsys, ["chambers", "A15"])
    assert code == 0
    assert rep["chambers"] == 2
    assert rep["walls"] == [[1, 0]]
    assert rep["boundary"] == [[2, 1], [2, -1]]


def test_chambers_text_has_diagram(capsys):
    code = run(["chambers", "D17"])
    out = capsys.readouterr().out
    assert code == 0
    assert "3h-2xi" in out
    assert "chamber" in out


def test_json_and_text_agree_field_for_field(capsys):
    code, rep = run_json(capsys, ["relation", "D8D8"])
    assert code == 0
    code = run(["relation", "D8D8"])
    text = capsys.readouterr().out
    for key in ("schema", "model", "status"):
        assert f"{key}: {rep[key]}" in text
    assert str(rep["certificate"])[1:-1].replace("'", "") in text.replace("'", "")


def test_relation_certificates(capsys):
    code, rep = run_json(capsys, ["relation", "D17"])
    assert code == 0
    assert rep["status"] == "certified"
    assert rep["certificate"] == [3, 2]


def test_build_roundtrip(capsys):
    code, rep = run_json(
        capsys,
        ["build", "--v0", "P2", "--v1", "P2", "--n", "9", "--h",
         "l-e1+4l'-2e'1-e'2-e'3-e'4-e'5-e'6-e'7-e'8-e'9"],
    )
    assert code == 0
    assert rep["h_square"] == 4
    assert rep["d"] == 0


def test_build_rejects_bad_h(capsys):
    code = run(["build", "--v0", "P2", "--v1", "P2", "--n", "9", "--h", "l"])
    assert code == 2
    err = capsys.readouterr().err
    assert "h.h" in err


def test_build_rejects_unknown_symbol(capsys):
    code = run(["build", "--v0", "P1xP1", "--v1", "P2", "--n", "2", "--h", "3l-e1"])
    assert code == 2
    assert "alphabet" in capsys.readouterr().err


def test_oracle_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("DEGEN_ATLAS_SEED", "123")
    code, rep = run_json(capsys, ["oracle", "A15", "--trials", "5"])
    assert code == 0
    assert rep["seed"] == 123
    monkeypatch.delenv("DEGEN_ATLAS_SEED")
    code, rep = run_json(capsys, ["oracle", "A15", "--trials", "5", "--seed", "9"])
    assert rep["seed"] == 9


def test_list_command(capsys):
    code, rep = run_json(capsys, ["list"])
    assert code == 0
    assert len(rep["models"]) == 9
    ids = [m["id"] for m in rep["models"]]
    assert "D17" in ids and "A15" in ids


def test_list_full_exports_lattice_data(capsys):
    code, rep = run_json(capsys, ["list", "--full"])
    assert code == 0
    entry = rep["models"][0]
    assert len(entry["gram"]) == 20
    assert "xi" in entry and "basis" in entry


def test_verify_aggregation_and_exit_codes(capsys, monkeypatch):
    import degen_atlas.cli as cli

    good = {"suite": "s1", "pass": True, "models": {"x": {"ok": True}}}
    bad = {"suite": "s2", "pass": False, "rows": {"y": {"ok": False}}}
    monkeypatch.setattr(cli, "verify_classification", lambda: good)
    monkeypatch.setattr(cli, "verify_relations", lambda: dict(good, suite="s2"))
    monkeypatch.setattr(cli, "verify_fans", lambda: dict(good, suite="s3"))
    code, rep = run_json(capsys, ["verify", "--all"])
    assert code == 0 and rep["passed"] == 3 and rep["pass"]

    monkeypatch.setattr(cli, "verify_fans", lambda: bad)
    code = run(["verify", "--all"])
    out = capsys.readouterr()
    assert code == 1
    assert "FAIL" in out.out
    assert "failed" in out.err
