from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from rank2cluster.cli import run

GOLDEN = Path(__file__).parent / "golden"


def invoke(capsys, *argv: str) -> tuple[int, str, str]:
    try:
        status = run(list(argv))
    except SystemExit as exc:
        status = exc.code
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize(
    "golden, argv",
    [
        ("clusters_1_1.txt", ["clusters", "--m", "1", "--n", "1"]),
        ("dio_solve_g2_words.txt", ["dio-solve", "--preset", "g2", "--bound", "100", "--words"]),
        ("dio_solve_22.json", ["dio-solve", "--preset", "22", "--bound", "1000", "--json"]),
        ("dvectors_2_2.txt", ["dvectors", "--m", "2", "--n", "2", "--k-max", "6"]),
        ("mutate_1_2.json", ["mutate", "--m", "1", "--n", "2", "--word", "1212", "--json"]),
        ("search_2_2.txt", ["search", "--m", "2", "--n", "2", "--s-max", "2", "--t-max", "2"]),
    ],
)
def test_golden(capsys, golden, argv):
    status, out, _ = invoke(capsys, *argv)
    assert status == 0
    assert out == (GOLDEN / golden).read_text()


def test_documented_examples(capsys):
    status, out, _ = invoke(capsys, "clusters", "--m", "1", "--n", "1")
    lines = out.splitlines()
    assert len(lines) == 11 and lines[-1] == "period: 10"
    status, out, _ = invoke(capsys, "verify", "--m", "2", "--n", "2", "--expr", "(x1^2+x2^2+1)/(x1*x2)")
    assert (status, out) == (0, "invariant: true\n")
    status, out, _ = invoke(capsys, "dio-solve", "--preset", "g2", "--bound", "100")
    lines = out.splitlines()
    assert lines[0].startswith("solutions: 8") and lines[-1] == "(1,2)"


def test_construct_and_decompose(capsys):
    status, out, _ = invoke(capsys, "construct", "--m", "1", "--n", "1", "--F", "x1", "--phi", "power_sum:1:1/2")
    assert out.splitlines() == ["(x1^2*x2 + x1^2 + x1*x2^2 + 2*x1 + x2^2 + 2*x2 + 1)/(x1*x2)", "status: invariant"]
    status, out, _ = invoke(capsys, "construct", "--m", "1", "--n", "2", "--F", "x1")
    assert status == 0 and out.endswith("status: invariant\n")
    status, out, _ = invoke(capsys, "decompose", "--expr", "(x1 + 2/x1)*(x2 + 2/x2)")
    assert (status, out) == (0, "X1*X2\n")
    status, out, _ = invoke(capsys, "decompose", "--half", "--expr", "x1^2 + 4/x1^2")
    assert (status, out) == (0, "X^2 - 4\n")


def test_certify_descent_imr_equivalence(capsys):
    status, out, _ = invoke(capsys, "dio-certify", "--preset", "14", "--bound", "1000")
    assert status == 0 and out.splitlines()[:3] == ["verdict: complete within bound", "orbit: 12 (pruned at bound)", "brute-force: 12"]
    status, out, _ = invoke(capsys, "descent", "--a", "41", "--b", "3")
    assert out.splitlines() == ["branch: a > b^2", "mu1: (2,3)", "mu2: (41,14)", "descent: true"]
    status, out, _ = invoke(capsys, "imr-check", "--matrix", "0,1,0;-1,0,1;0,-1,0", "--depth", "3")
    assert status == 0 and out.splitlines()[0] == "imr: false"
    status, out, _ = invoke(capsys, "equivalence", "--m", "1", "--n", "1", "--k-max", "3")
    assert out.splitlines() == ["equivalent: true", "checked: 16"]


def test_custom_equation(capsys):
    argv = ["dio-solve", "--expr", "(x1^2+x2^2+1)/(x1*x2)", "--m", "2", "--n", "2", "--initial", "2,5", "--bound", "13"]
    status, out, _ = invoke(capsys, *argv)
    assert status == 0 and out.splitlines()[0] == "solutions: 7 (orbit pruned at bound 13)"


COMMANDS = [
    ["mutate", "--m", "2", "--n", "3", "--word", "121"],
    ["clusters", "--m", "0", "--n", "0"],
    ["dvectors", "--m", "1", "--n", "4", "--k-max", "3", "--closed-form"],
    ["verify", "--m", "1", "--n", "1", "--expr", "x1"],
    ["construct", "--m", "0", "--n", "0", "--F", "x1", "--phi", "elementary:2"],
    ["search", "--m", "1", "--n", "1", "--s", "1", "--t", "1"],
    ["decompose", "--expr", "x1 + 2/x1 + x2 + 2/x2"],
    ["dio-solve", "--preset", "a2", "--bound", "50"],
    ["dio-certify", "--preset", "b2", "--bound", "100", "--threads", "2"],
    ["imr-check", "--matrix", "0,2,-2;-2,0,2;2,-2,0", "--depth", "4"],
    ["descent", "--a", "2", "--b", "3"],
    ["equivalence", "--m", "2", "--n", "2", "--k-max", "2"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_json_output(capsys, argv):
    status, out, _ = invoke(capsys, *argv, "--json")
    assert status == 0
    payload = json.loads(out)
    assert json.dumps(payload, sort_keys=True) + "\n" == out
    # the same command twice gives the same bytes
    assert invoke(capsys, *argv, "--json")[1] == out


@pytest.mark.parametrize(
    "argv, name",
    [
        (["verify", "--m", "1", "--n", "1", "--expr", "x1 +* x2"], "SyntaxError"),
        (["verify", "--m", "1", "--n", "1", "--expr", "7/3"], "ConstantInput"),
        (["mutate", "--m", "0", "--n", "2", "--word", "121"], "NotDivisible"),
        (["construct", "--m", "2", "--n", "2", "--F", "x1"], "InfiniteType"),
        (["descent", "--a", "1", "--b", "1"], "PreconditionViolated"),
        (["decompose", "--expr", "x1*x2"], "NotInvariant"),
        (["dvectors", "--m", "1", "--n", "2", "--closed-form"], "UnsupportedRegime"),
    ],
)
def test_domain_errors_exit_1(capsys, argv, name):
    status, out, _ = invoke(capsys, *argv)
    assert status == 1
    assert out.splitlines()[0].startswith(f"{name}: ")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["clusters", "--m", "1"],
        ["clusters", "--m", "-1", "--n", "1"],
        ["mutate", "--m", "1", "--n", "1", "--word", "123"],
        ["construct", "--m", "1", "--n", "1", "--F", "x1", "--phi", "median"],
        ["dio-solve", "--bound", "10"],
        ["dio-solve", "--preset", "a2", "--bound", "0"],
        ["dio-solve", "--expr", "x1", "--m", "1", "--n", "1", "--initial", "a,b", "--bound", "5"],
        ["imr-check", "--matrix", "0,x;1,0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    status, _, err = invoke(capsys, *argv)
    assert status == 2
    assert "error" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rank2cluster", "verify", "--m", "1", "--n", "4", "--expr", "(x2^4+x1^2+2*x1+1)/(x1*x2^2)"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "invariant: true\n"
