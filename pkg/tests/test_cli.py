import json

import pytest

from qlotoeplitz.cli import main
from qlotoeplitz.suite import ConfigError, RunConfig, run


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_grade(capsys):
    code, out, _ = call(capsys, "grade", "V(ab,b) + 2 V(a,a)")
    assert code == 0
    assert "components: 2" in out
    assert "degree a: V(ab,b)" in out and "degree e: 2 V(a,a)" in out
    assert "expectation: 2 V(a,a)" in out


def test_grade_structured(capsys):
    code, out, _ = call(capsys, "grade", "V(ab,b) + 2 V(a,a)", "--format", "structured")
    doc = json.loads(out)
    assert [c["label"] for c in doc["components"]] == ["a", "e"]


def test_parse_error_has_position(capsys):
    code, _, err = call(capsys, "grade", "V(ab,b) + 2 V(a,")
    assert code == 2
    assert "position" in err and "^" in err


def test_find_fesspe(capsys):
    code, out, _ = call(capsys, "find-fesspe", "--max-size", "2", "--radius", "6", "--format", "structured")
    assert code == 0
    assert json.loads(out)["reports"][0]["parameters"]["found"] == ["a", "b"]
    code, _, _ = call(capsys, "find-fesspe", "--instance", "divisibility", "--max-size", "2", "--radius", "6")
    assert code == 1


def test_lub_products_lemma(capsys):
    code, out, _ = call(capsys, "verify-lemmas", "--lemma", "lub-products", "--radius", "4",
                        "--instance", "free_abelian:2")
    assert code == 0
    assert out.startswith("[PASS   ] lub-products on free_abelian(rank=2)")


def test_check_qlo_half_line_flags(capsys):
    code, out, _ = call(capsys, "check-qlo", "--instance", "half_line:4", "--radius", "2")
    assert code == 0
    assert "[SKIPPED] qlo-lub" in out


def test_spectrum_command(capsys):
    code, out, _ = call(capsys, "spectrum", "--instance", "free_abelian:1", "--radius", "3")
    assert code == 0 and ": 4 cases" in out
    code, _, err = call(capsys, "spectrum", "--radius", "4")
    assert code == 2 and "limit" in err


def test_dump_matrix(capsys):
    code, out, _ = call(capsys, "dump-matrix", "V(a,e)", "--radius", "1")
    assert code == 0
    assert "basis: e a b\n0 0 0\n1 0 0\n0 0 0\n" in out


def test_divisibility_run_fails_with_witness(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = call(capsys, "run", "--instance", "divisibility", "--fesspe", "2,3,5",
                        "--radius", "10", "--format", "structured", "--out", str(out_path))
    assert code == 1
    doc = json.loads(out_path.read_text())
    fess = next(r for r in doc["reports"] if r["check"] == "fesspe")
    assert fess["witnesses"] == [{"counterexample": "7"}]
    assert {r["check"] for r in doc["reports"] if r["verdict"] == "skipped"} >= {"commutation", "rank-one"}


def test_half_line_run_flags(capsys):
    code, out, _ = call(capsys, "run", "--instance", "half_line:4", "--fesspe", "1,3/2", "--radius", "2")
    assert code == 0
    assert "[FLAGGED] fesspe" in out and "(1,2)" in out


def test_reports_are_deterministic(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"instance": {"kind": "free_abelian", "rank": 2},
                               "fesspe": [["(1,0)", "(0,1)"]], "radius": 2, "seed": 7}))
    first = call(capsys, "run", "--config", str(cfg), "--format", "structured")
    second = call(capsys, "run", "--config", str(cfg), "--format", "structured")
    assert first == second and first[0] == 0


@pytest.mark.parametrize("doc, msg", [
    ({"instance": {"kind": "braid"}}, "unknown instance kind"),
    ({"instance": {"kind": "divisibility"}, "radius": 0}, "positive"),
    ({"instance": {"kind": "divisibility"}, "checks": ["nope"]}, "unknown checks"),
    ({"instance": {"kind": "divisibility"}, "fesspe": [["1"]]}, "identity"),
    ({"instance": {"kind": "divisibility"}, "fesspe": [[]]}, "non-empty"),
    ({"radius": 2}, "instance"),
])
def test_bad_configs(doc, msg):
    with pytest.raises(ConfigError, match=msg):
        RunConfig.from_dict(doc)


def test_bad_config_file_exit_code(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{\"instance\": ")
    code, _, err = call(capsys, "run", "--config", str(cfg))
    assert code == 2 and "line 1" in err


def test_usage_error_exit_code(capsys):
    assert call(capsys, "frobnicate")[0] == 2


def test_every_enabled_check_reported_once():
    cfg = RunConfig.from_dict({"instance": {"kind": "free_abelian", "rank": 1},
                               "fesspe": [["1"], ["2"]], "radius": 3})
    rep = run(cfg)
    names = [r.check for r in rep.reports]
    assert sorted(names) == sorted(cfg.enabled) and len(set(names)) == len(names)
    assert not rep.failed
