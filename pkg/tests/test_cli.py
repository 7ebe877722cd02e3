import json
import subprocess
import sys
from pathlib import Path

import pytest

from sarkisov.cli import SpaceSyntaxError, parse_space, parse_syntax, run_command
from sarkisov.spaces import F, InvalidSpace, Q, R, normalize

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_space():
    assert parse_space("R[3,1]") == R(3, 1)
    assert parse_space(" F[ 2, +1, -1 ]") == F(2, 1, -1)
    assert parse_space("Q[u0^3*u1 + u1^4]").form.coeffs == (0, 1, 0, 0, 1)
    with pytest.raises(InvalidSpace, match="a=-2 < 0 is unsupported"):
        parse_space("F[-2,1,1]")


@pytest.mark.parametrize("text,pos", [("X[1]", 0), ("F[1,2]", 1), ("R[3,x]", 4),
                                      ("Q[u0 + $]", 7), ("P3 junk", 3), ("W[2", 3)])
def test_parse_errors(text, pos):
    with pytest.raises(SpaceSyntaxError) as e:
        parse_syntax(text)
    assert e.value.position == pos


@pytest.mark.parametrize("text", ["F[2,3,-1]", "Q[u0^4 - 3*u0*u1^3]", "P1123", "U[2,3,6]"])
def test_render_round_trip(text):
    s = parse_space(text)
    assert parse_space(s.to_text()) == s


def test_links_p1123(capsys):
    code, out, _ = run(capsys, "links", "P1123")
    assert code == 0
    assert out.splitlines() == ["S9 -> R[3,1]", "S10^-1 -> W[2]"]


def test_path(capsys):
    code, out, _ = run(capsys, "path", "R[3,1]", "W[2]")
    assert code == 0
    assert out.splitlines() == ["S9^-1: R[3,1] -> P1123", "S10^-1: P1123 -> W[2]", "length 2"]
    code, _, err = run(capsys, "path", "P3", "P[2]")
    assert code == 3 and "no path" in err


def test_info_s2(capsys):
    code, out, _ = run(capsys, "info", "S[2]")
    assert code == 0
    assert "NotMaximal: blow-down of twisted cubic to P3" in out.splitlines()


def test_exit_codes(capsys):
    assert run(capsys, "info", "F[2,1")[0] == 1
    assert run(capsys, "info", "F[-2,1,1]")[0] == 2
    assert run(capsys, "apply", "F[2,1,-1]", "S11^-1")[0] == 4
    assert run(capsys, "apply", "F[2,1,-1]", "S99")[0] == 1
    assert run(capsys, "toric", "Q3", "check")[0] == 2
    assert run(capsys, "path", "S[2]", "P3")[0] == 2
    assert run(capsys, "frobnicate")[0] == 1


def test_apply(capsys):
    code, out, _ = run(capsys, "apply", "Q[u0*u1*(u0+u1)*(u0-2*u1)]", "S16", "--h", "u0-u1")
    assert code == 0
    g = Q("u0*u1*(u0+u1)*(u0-2*u1)*(u0-u1)^2")
    assert out.strip() == normalize(g).to_text()
    code, out, _ = run(capsys, "apply", "F[0,1,-1]", "S7", "--payload", "2")
    assert (code, out.strip()) == (0, "R[1,1]")


def test_q_links_print_descriptor_first(capsys):
    code, out, _ = run(capsys, "links", "Q[u0^2*(u0^4+u1^4+u0*u1^3)]")
    lines = out.splitlines()
    assert lines[0].startswith("S16 -> Q[g*h^2]")
    assert lines[1].startswith("S16^-1 -> ")


def test_graph_and_toric(capsys):
    code, out, _ = run(capsys, "graph", "P1123", "--radius", "1", "--dot")
    assert code == 0 and out.startswith("digraph links {")
    code, out, _ = run(capsys, "toric", "W[3]", "export")
    assert code == 0 and len(out.split("\n\n")[0].splitlines()) == 5
    code, out, _ = run(capsys, "toric", "W[3]", "check")
    assert "terminal: True" in out


@pytest.mark.parametrize("name,argv", [
    ("info_S2.json", ["info", "S[2]", "--json"]),
    ("info_F21m1.json", ["info", "F[2,1,-1]", "--json"]),
    ("links_P1123.json", ["links", "P1123", "--json"]),
    ("links_Q.json", ["links", "Q[u0^2*u1*(u0+u1)^3*(u0-u1)*(u0+2*u1)]", "--json"]),
    ("path_R31_W2.json", ["path", "R[3,1]", "W[2]", "--json"]),
    ("toric_W2.json", ["toric", "W[2]", "check", "--json"]),
])
def test_golden_json(capsys, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / name).read_text())


def test_selfcheck_small(capsys):
    code, out, _ = run(capsys, "selfcheck", "--grid", "small")
    assert code == 0
    assert len(out.splitlines()) == 10 and all(l.startswith("[PASS]") for l in out.splitlines())


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sarkisov", "links", "P1123"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "S9 -> R[3,1]"
