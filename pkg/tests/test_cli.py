import json
import subprocess
import sys

import pytest

from cihom.catalog import UnknownExampleError, catalog_ids, run_example
from cihom.cli import main
from cihom.dsl import ParseError, parse_session

TWO_LINE_SCRIPT = """
ring R = quotient(field=f32003, vars=[x,y,z,u], degrees=[1,1,1,1], ideal=[x*y, z*u])
module M = coker(R, shifts=[0], matrix=[[y, u]])
"""


def test_parse_two_line_script():
    session = parse_session(TWO_LINE_SCRIPT)
    assert set(session.rings) == {"R"}
    assert set(session.modules) == {"M"}
    assert session.modules["M"].n_gens == 1


def test_parse_example_reference():
    session = parse_session("example 3.14")
    assert session.commands == [{"command": "example", "id": "3.14"}]


def test_parse_glued_ids():
    session = parse_session("example pre-3.4\nexample cor4.7-instance")
    assert [c["id"] for c in session.commands] == ["pre-3.4", "cor4.7-instance"]


def test_parse_error_dangling_comma():
    bad = TWO_LINE_SCRIPT + "module N = coker(R, shifts=[0], matrix=[[y,]])\n"
    with pytest.raises(ParseError) as err:
        parse_session(bad)
    assert "dangling comma" in str(err.value)


def test_parse_error_has_location():
    with pytest.raises(ParseError) as err:
        parse_session("ring R = quotient(")
    assert err.value.line == 1


def test_undeclared_module_rejected():
    with pytest.raises(ParseError):
        parse_session(TWO_LINE_SCRIPT + "tor M N bound=2\n")


def test_catalog_ids_complete():
    assert set(catalog_ids()) == {"3.11", "3.13", "3.14", "pre-3.4", "4.4", "4.5",
                                  "4.19", "cor4.7-instance"}


def test_run_example_unknown():
    with pytest.raises(UnknownExampleError):
        run_example("nope")


def test_run_example_4_4_passes():
    report = run_example("4.4")
    assert report["pass"]
    assert all(c["ok"] for c in report["checks"])
    assert {c["provenance"] for c in report["checks"]} <= {"reference", "trivial", "derived"}


def test_cli_example_exit_code(capsys):
    rc = main(["--example", "4.4", "--format", "json"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    assert doc["field_tag"] == "f32003"
    assert doc["results"][0]["data"]["pass"] is True
    assert doc["tool_version"]


def test_cli_usage_error(capsys):
    assert main([]) == 2


def test_cli_unknown_example(capsys):
    assert main(["--example", "zzz"]) == 2


def test_cli_parse_error(tmp_path, capsys):
    script = tmp_path / "bad.ci"
    script.write_text("module M = coker(R)\n")
    assert main(["--script", str(script)]) == 2


def test_cli_script_runs_and_is_byte_stable(tmp_path, capsys):
    script = tmp_path / "s.ci"
    script.write_text(TWO_LINE_SCRIPT + "resolve M steps=4\ntor M M bound=2\n")
    rc1 = main(["--script", str(script), "--format", "json"])
    out1 = capsys.readouterr().out
    rc2 = main(["--script", str(script), "--format", "json"])
    out2 = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    kinds = [r["kind"] for r in doc["results"]]
    assert kinds == ["resolve", "tor"]
    assert doc["results"][0]["data"]["betti"]["betti"][:3] == [1, 2, 3]


def test_cli_check_command(tmp_path, capsys):
    script = tmp_path / "c.ci"
    script.write_text(TWO_LINE_SCRIPT + "check 4.3 on (M)\n")
    rc = main(["--script", str(script), "--format", "json"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    rep = doc["results"][0]["data"]["theorem_reports"][0]
    assert rep["id"] == "4.3"


def test_cli_text_format(tmp_path, capsys):
    rc = main(["--example", "4.4"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "example 4.4: PASS" in out


def test_cli_env_default_format(monkeypatch, capsys):
    monkeypatch.setenv("CIHOM_FORMAT", "json")
    from cihom.cli import build_arg_parser
    args = build_arg_parser().parse_args([])
    assert args.format == "json"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cihom.cli", "--example", "4.4"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_cli_mismatch_exit_code(monkeypatch, capsys):
    # force a failing expectation through a stubbed catalog entry
    import cihom.catalog as cat

    def fake_runner(field, bounds):
        return {"checks": [{"name": "forced", "expected": 1, "actual": 2,
                            "ok": False, "provenance": "trivial"}]}

    monkeypatch.setitem(cat._ENTRIES, "stub", ("stub entry", fake_runner))
    rc = main(["--example", "stub", "--format", "json"])
    capsys.readouterr()
    assert rc == 1


def test_declaration_round_trip():
    from cihom.dsl import unparse_declarations
    src = TWO_LINE_SCRIPT + (
        "module N = coker(R, shifts=[0,0,0], matrix=[[0, u], [-z, x], [y, 0]])\n")
    s1 = parse_session(src)
    text = unparse_declarations(s1)
    s2 = parse_session(text)
    assert s1.rings["R"].describe() == s2.rings["R"].describe()
    for name in ("M", "N"):
        assert s1.modules[name].describe() == s2.modules[name].describe()


def test_text_tor_table(tmp_path, capsys):
    script = tmp_path / "t.ci"
    script.write_text(TWO_LINE_SCRIPT + "tor M M bound=2\n")
    rc = main(["--script", str(script)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "Tor profile: M vs M" in out
    assert "vanishes" in out and "depth" in out


def test_empty_session_header_only(tmp_path, capsys):
    script = tmp_path / "e.ci"
    script.write_text(TWO_LINE_SCRIPT)
    rc = main(["--script", str(script)])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("cihom ")


def test_cli_guardrail_exit_code(tmp_path, capsys):
    script = tmp_path / "g.ci"
    script.write_text(TWO_LINE_SCRIPT
                      + "module K = coker(R, shifts=[0], matrix=[[x, y]])\n"
                      + "pushforward K\n")
    assert main(["--script", str(script)]) == 3


def test_cli_ext_command(tmp_path, capsys):
    script = tmp_path / "x.ci"
    script.write_text(TWO_LINE_SCRIPT + "ext M M bound=2\n")
    rc = main(["--script", str(script), "--format", "json"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    entries = doc["results"][0]["data"]["entries"]
    assert [e["index"] for e in entries] == [1, 2]


def test_cli_search_command(tmp_path, capsys):
    script = tmp_path / "sr.ci"
    script.write_text(
        "ring R = quotient(field=f32003, vars=[x,y], degrees=[1,1], ideal=[x*y])\n"
        "search 3.17 with (ring=R, samples=3, seed=1)\n")
    rc = main(["--script", str(script), "--format", "json"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    data = doc["results"][0]["data"]
    assert data["config"]["question"] == "3.17"
    assert len(data["findings"]) == 3
