import json

from click.testing import CliRunner

from pgl.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_eval_mac_sentence():
    res = run("eval", "star6.pgl", "mac.pgls")
    assert res.exit_code == 0
    assert res.output.strip() == "T"


def test_eval_with_trace_names_rules():
    res = run("eval", "star4", "two_farmer", "--trace")
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[-1] == "F"
    assert all(line.strip().startswith("[") for line in lines[:-1])
    assert any("[7]" in line for line in lines)


def test_eval_strict_quantifier_is_a_diagnostic():
    res = run("eval", "star6", "mac", "--strict-quantifier")
    assert res.exit_code == 2
    assert "MissingAssignment" in res.output


def test_check_open_formula(tmp_path):
    path = tmp_path / "open.pgl"
    path.write_text("pred p/1\np(x)\n")
    res = run("check", str(path))
    assert res.exit_code == 2
    assert "NoFreeVars" in res.output


def test_check_ok():
    res = run("check", "star11")
    assert res.exit_code == 0 and res.output.strip() == "ok"


def test_parse_error_reports_position(tmp_path):
    path = tmp_path / "broken.pgl"
    path.write_text("# comment\nforall x. p(x)) & top\n")
    res = run("check", str(path))
    assert res.exit_code == 2
    assert "broken.pgl:2:" in res.output


def test_missing_file_is_a_usage_error():
    res = run("eval", "nowhere.pgl", "mac")
    assert res.exit_code == 2


def test_validity_report(tmp_path):
    path = tmp_path / "ua.pgl"
    path.write_text("(forall x. (P1(x) -> P2(x))) -> (exists x. P2(x) & P1(x))\n")
    res = run("validity", str(path), "--bases", "2", "--copies", "1", "--json")
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert report["verdict"] == "valid-at-bound"
    assert report["counts"]["noncohering"] > 0


def test_validity_ceiling(tmp_path):
    path = tmp_path / "big.pgl"
    path.write_text("forall x. forall y. (R(x, y) -> S(y, x))\n")
    res = run("validity", str(path), "--bases", "3", "--depth", "2")
    assert res.exit_code == 2


def test_suite_writes_json(tmp_path):
    out = tmp_path / "suite.json"
    res = run("suite", "--json", str(out))
    assert res.exit_code == 0, res.output
    records = json.loads(out.read_text())
    assert {"id", "expected", "got", "verdict"} <= set(records[0])
    schemata = [r for r in records if "counts" in r]
    assert len(schemata) == 17
    assert all(r["got"] == "valid-at-bound" for r in schemata)
    assert res.output.strip().splitlines()[-1].startswith(f"{len(records)}/{len(records)} passed")
