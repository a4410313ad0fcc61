import subprocess
import sys

import pytest

from bulbs.cli import main
from bulbs.textio import TextFormatError, emit_report, emit_wiring, parse_report, parse_wiring
from bulbs.wiring import evaluate_M


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["w10.txt", "tower3.txt", "identity5.txt", "identity2.txt"])
def test_wiring_file_roundtrip(fixtures, name):
    text = (fixtures / name).read_text()
    assert emit_wiring(parse_wiring(text)) == text


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("2\n10\n01", 3, 3),
        ("x\n", 1, 1),
        ("2\n10\n", 3, 1),
        ("2\n10\n02\n", 3, 2),
        ("2\n101\n01\n", 2, 3),
        ("2\n10\n01\n11\n", 4, 1),
    ],
)
def test_wiring_file_diagnostics(text, line, col):
    with pytest.raises(TextFormatError) as e:
        parse_wiring(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_seq(capsys):
    code, out, _ = run(capsys, "seq", "1..8")
    assert code == 0
    assert [int(l.split()[1]) for l in out.splitlines()] == [1, 2, 2, 3, 4, 4, 4, 5]
    assert run(capsys, "seq", "15")[1] == "15 8\n"
    assert run(capsys, "seq", "1")[1] == "1 1\n"
    code, out, _ = run(capsys, "seq", "1..40", "--all-methods")
    assert code == 0 and "MISMATCH" not in out
    assert run(capsys, "seq", "5..2")[0] == 2


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["12", "4", "--target", "mu"], "8"),
        (["9", "3", "--target", "mu-star"], "7"),
        (["9", "6", "--target", "mu"], "unknown [5,6]"),
        (["12", "4", "--target", "U"], "8"),
        (["6", "3", "--target", "nu-star"], "4"),
    ],
)
def test_formula(capsys, argv, expected):
    code, out, _ = run(capsys, "formula", *argv)
    assert code == 0 and out == expected + "\n"


def test_formula_hypothesis_violation(capsys):
    code, out, err = run(capsys, "formula", "4", "1", "--target", "nu")
    assert code == 2 and out == "" and "m > 1" in err


@pytest.mark.parametrize("name,M", [("w10.txt", 6), ("identity5.txt", 5), ("tower3.txt", 8)])
def test_eval(capsys, fixtures, name, M):
    code, out, _ = run(capsys, "eval", str(fixtures / name))
    assert code == 0 and f"M: {M}\n" in out and "admissible: true" in out


def test_eval_mean_and_state(capsys, fixtures):
    code, out, _ = run(capsys, "eval", str(fixtures / "w10.txt"), "-c", "1000000000", "--mean")
    assert code == 0 and "mean: 5\n" in out
    assert run(capsys, "eval", str(fixtures / "w10.txt"), "-c", "101")[0] == 2


def test_eval_malformed(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2\n10\n0x\n")
    code, _, err = run(capsys, "eval", str(p))
    assert code == 2 and "line 3, column 2" in err


@pytest.mark.parametrize("name", ["w10", "tower:3", "tower:0", "optimal:12,4", "hadamard-wiring:2", "permuted-tower"])
def test_construct_then_eval_agrees(capsys, tmp_path, name):
    from bulbs.constructions import construct

    code, out, err = run(capsys, "construct", name)
    assert code == 0 and "verified" in err
    W = construct(name).wiring
    assert out == emit_wiring(W)
    p = tmp_path / "w.txt"
    p.write_text(out)
    assert f"M: {evaluate_M(W)}\n" in run(capsys, "eval", str(p))[1]


def test_construct_examples(capsys, fixtures):
    assert run(capsys, "construct", "tower:0")[1] == "1\n1\n"
    assert run(capsys, "construct", "w10")[1] == (fixtures / "w10.txt").read_text()
    code, _, err = run(capsys, "construct", "nope")
    assert code == 2 and "tower:K" in err


def test_search_report(capsys):
    code, out, err = run(capsys, "search", "5", "4", "--target", "mu")
    assert code == 0 and "wall_time" in err and "wall_time" not in out
    rep = parse_report(out)
    assert rep.fields["certification"] == "exhaustive" and rep.int_field("value") == 4
    assert evaluate_M(rep.witness) == 4
    code, out, _ = run(capsys, "search", "6", "3", "--target", "nu-star")
    rep = parse_report(out)
    assert rep.int_field("value") == 4 and rep.fields["exact_degree"] == "true"
    assert evaluate_M(rep.witness, rep.witness_c) == 4


def test_report_roundtrip():
    from bulbs.search import brute_nu

    R = brute_nu(4, 3)
    text = emit_report(R)
    rep = parse_report(text)
    assert rep.witness == R.witness and rep.witness_c == R.witness_c
    assert rep.int_field("nodes") == R.nodes


def test_search_exit_codes(capsys):
    assert run(capsys, "search", "8", "4")[0] == 3
    code, out, _ = run(capsys, "search", "12", "4", "--bounded-only")
    assert code == 1 and "certification: bounded-only" in out
    code, out, _ = run(capsys, "search", "12", "4", "--bounded-only", "--use-closed-forms")
    assert code == 0 and "certification: bounds-match" in out
    assert run(capsys, "search", "3", "4", "--exact")[0] == 2
    assert run(capsys, "search", "3", "2", "--workers", "0")[0] == 2


def test_search_bytes_independent_of_workers(capsys):
    outs = {run(capsys, "search", "5", "3", "--workers", str(w))[1] for w in (1, 2, 8)}
    assert len(outs) == 1


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "formulas", "--n", "1..5")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "constructions")
    assert code == 0 and out.count("PASS") >= 10
    code, out, _ = run(capsys, "verify", "probes", "--n", "1..7", "--m", "6..7")
    assert code == 0 and "not a proof" in out
    code, out, _ = run(capsys, "verify", "lemmas", "--n", "6")
    assert code == 0


def test_verify_failure_exit(capsys, monkeypatch):
    from bulbs import cli
    from bulbs.audit import AuditEntry, AuditReport

    monkeypatch.setattr(cli, "_construction_suite", lambda: AuditReport([AuditEntry("x", "y", "z", passed=False)]))
    assert run(capsys, "verify", "constructions")[0] == 1


def test_export_dot(capsys, fixtures, tmp_path):
    code, out, _ = run(capsys, "export-dot", "--show-loops", str(fixtures / "identity2.txt"))
    assert code == 0 and out == "digraph wiring {\n  1;\n  2;\n  1 -> 1;\n  2 -> 2;\n}\n"
    assert "->" not in run(capsys, "export-dot", str(fixtures / "identity2.txt"))[1]
    p = tmp_path / "t2.txt"
    p.write_text(run(capsys, "construct", "tower:2")[1])
    out = run(capsys, "export-dot", "--collapse-cliques", str(p))[1]
    assert out.count("[label=") == 3 and out.count("->") == 3
    out = run(capsys, "export-dot", "--collapse-cliques", str(fixtures / "w10.txt"))[1]
    assert out.count("[label=") == 4


def test_edge_direction(capsys, tmp_path):
    # w[2,1] = 1: button 1 toggles bulb 2
    p = tmp_path / "e.txt"
    p.write_text("2\n10\n11\n")
    assert "1 -> 2;" in run(capsys, "export-dot", str(p))[1]


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bulbs", "seq", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "3 2\n"
