import json
import subprocess
import sys

import pytest

from cli_cases import BLOCKS, CASES, SEMIGROUPS, SEMILATTICES
from conftest import FIXTURES
from treelike.cli import main
from treelike.formats import DocumentError, dump, parse, parse_text


def run(capsys, args, fixture):
    *cmd, = args
    # the file argument goes right after the (sub)command words
    words = 2 if cmd[0] == "blocks" else 1
    argv = cmd[:words] + [str(FIXTURES / fixture)] + cmd[words:]
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("args,fixture,expected", CASES,
                         ids=[f"{' '.join(a)}:{f}" for a, f, _ in CASES])
def test_exit_codes(capsys, args, fixture, expected):
    code, out = run(capsys, args, fixture)
    assert code == expected
    report = json.loads(out)
    assert set(report) == {"command", "input", "verdict", "witnesses", "trace", "elapsed_ms"}
    assert report["elapsed_ms"] is None


def test_shift_strict_witness(capsys):
    code, out = run(capsys, ["blocks", "find", "--strict"], "shift.blk")
    (w,) = json.loads(out)["witnesses"]
    assert code == 0
    assert (w["block"], w["name"], w["power"], w["separator"]) == (1, "X1", 1, "ab")
    assert w["verified_symbolic"] and w["verified_oracle"] and w["separator_oracle"]


def test_b2_condition_iii(capsys):
    code, out = run(capsys, ["condition-iii"], "b2.inv")
    r = json.loads(out)
    assert code == 2 and r["verdict"] == "NotFound"
    assert [w["e"] for w in r["witnesses"]] == [3, 4]


def test_e4_spectrum(capsys):
    code, out = run(capsys, ["spectrum"], "e4.sl")
    (w,) = json.loads(out)["witnesses"]
    assert code == 0 and w["points"] == 2 and w["tight_equals_ultra"]
    assert w["tight"] == w["ultra"] == w["atoms"] == [2, 3]


def test_props_reports_domination(capsys):
    code, out = run(capsys, ["props"], "diamond.sl")
    tree, atoms, dom = json.loads(out)["witnesses"]
    assert tree == {"property": "tree_like", "value": False, "counterexample": [2, 3]}
    assert atoms["value"] == [1]


def test_action_on_b2(capsys):
    code, out = run(capsys, ["action", "--element", "1"], "b2.inv")
    (w,) = json.loads(out)["witnesses"]
    assert w["mapping"] == [[4, 3]]
    assert all(x["equal"] for x in w["image_of_domain_sets"])


def test_second_route_reported(capsys):
    code, out = run(capsys, ["action", "--element", "3"], "b2ext.inv")
    (w,) = json.loads(out)["witnesses"]
    parts = {x["e"]: x["part"] for x in w["image_of_domain_sets"]}
    assert parts[5] == "ii" and parts[4] == "i"


def test_violation_report(capsys):
    code, out = run(capsys, ["blocks", "find"], "violation.blk")
    (w,) = json.loads(out)["witnesses"]
    assert code == 4 and (w["power"], w["i"], w["j"]) == (1, 1, 2)


def test_parse_errors_carry_lines(capsys):
    code, out = run(capsys, ["validate"], "overlap.blk")
    (err,) = json.loads(out)["witnesses"]
    assert err["error"] == "NotPrefixFree" and err["lines"] == [4, 5]
    code, out = run(capsys, ["validate"], "badheader.sl")
    assert json.loads(out)["witnesses"][0]["error"] == "UnknownHeader"


def test_syntax_errors():
    with pytest.raises(DocumentError) as exc:
        parse_text("SEMILATTICE 2\n0 0\n0 x\n")
    assert (exc.value.kind, exc.value.line, exc.value.column) == ("SyntaxError", 3, 3)
    with pytest.raises(DocumentError):
        parse_text("BLOCKS alphabet=ab\nUNIVERSE a b\nBLOCK X: a b\nMAP a -> c\nMAP b -> b\n")
    with pytest.raises(DocumentError):
        parse_text("# nothing\n")


def test_redundant_words_warn():
    doc = parse_text("BLOCKS alphabet=ab\nUNIVERSE a ab b\nBLOCK X: a b\nMAP a -> a\nMAP b -> b\n")
    assert len(doc.warnings) == 1 and "line 2" in doc.warnings[0]


@pytest.mark.parametrize("fixture", SEMILATTICES + SEMIGROUPS + BLOCKS)
def test_round_trip(fixture):
    doc = parse(FIXTURES / fixture)
    again = parse_text(dump(doc))
    assert again == doc
    assert dump(again) == dump(doc)


def test_output_file_and_timing(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["spectrum", str(FIXTURES / "e4.sl"), "-o", str(out), "--timing"])
    assert code == 0 and capsys.readouterr().out == ""
    assert isinstance(json.loads(out.read_text())["elapsed_ms"], float)


def test_entry_point_runs_as_module():
    res = subprocess.run([sys.executable, "-m", "treelike", "validate", str(FIXTURES / "two.sl")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "valid"
