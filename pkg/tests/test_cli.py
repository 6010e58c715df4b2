import json
import subprocess
import sys

import pytest

from pvk import cli


def run_json(*argv):
    code, text = cli.run(["--format", "json", *argv])
    return code, (json.loads(text) if code != cli.EXIT_USAGE else text)


def test_kgroup_example1_k1():
    code, doc = run_json("kgroup", "--example", "1", "--which", "k1", "--depth", "3")
    assert code == 0 and doc["verdict"] == "pass"
    assert set(doc) >= {"command", "config", "claims", "certificates", "verdict"}
    assert doc["certificates"][0]["kernel_rank"] == 2


def test_kgroup_example2_k0():
    code, doc = run_json("kgroup", "--example", "2", "--which", "k0", "--depth", "2")
    assert code == 0 and all(c["ok"] for c in doc["claims"])


def test_kgroup_example1_k0_text():
    code, text = cli.run(["kgroup", "--example", "1", "--which", "k0", "--depth", "3"])
    assert code == 0 and "independent up to depth 3" in text and text.endswith("verdict: pass\n")


@pytest.mark.parametrize("example,expr,canonical", [
    ("1", '(ind (cyl "ab"))', [0, 1]),
    ("1", "(one)", [0, 0]),
    ("2", "(one)", []),
    ("2", '(ind (pat "" "a" "b"))', []),
])
def test_reduce(example, expr, canonical):
    code, doc = run_json("reduce", "--example", example, "--expr", expr)
    assert code == 0 and doc["certificates"][0]["canonical"] == canonical


@pytest.mark.parametrize("argv", [
    ["reduce", "--example", "1", "--expr", '(ind (pat "" "a" "b"))'],
    ["reduce", "--example", "2", "--expr", '(ind (fin "a"))'],
    ["reduce", "--example", "1", "--expr", "(ind (cyl"],
    ["paradox", "--set", '(uni (cyl "a") (cyl "b"))'],
    ["paradox", "--set", '(pat "" "a" "b")'],
    ["verify", "--lemma", "lem99"],
    ["amen", "--imax", "0"],
    ["kgroup", "--example", "3", "--which", "k0", "--depth", "1"],
    [],
])
def test_usage_errors_exit_1(argv):
    code, text = cli.run(argv)
    assert code == cli.EXIT_USAGE and (text.startswith("pvk: error") or not argv)


def test_paradox_commands():
    code, doc = run_json("paradox", "--set", "(all)")
    assert code == 0 and doc["certificates"][0]["strength"] == "strong"
    assert {c["name"] for c in doc["claims"]} >= {"p = vv*", "p = v*v + w*w"}
    code, doc = run_json("paradox", "--set", '(cyl "a")')
    assert code == 0 and doc["certificates"][0]["strength"] == "weak"


@pytest.mark.parametrize("lemma", ["lem1", "lem2", "lem6", "lem7", "lem12", "men31", "lem01"])
def test_verify_suites(lemma):
    code, doc = run_json("verify", "--lemma", lemma)
    assert code == 0, doc["claims"]


def test_verify_sized_suite_cases():
    code, doc = run_json("verify", "--lemma", "lem5", "--cases", "8")
    assert code == 0 and doc["config"]["cases"] == 8


def test_amen():
    code, doc = run_json("amen", "--imax", "6")
    assert code == 0 and doc["certificates"][0]["pairs"] > 0


def test_failure_exit_2(monkeypatch):
    from pvk import suites

    monkeypatch.setitem(suites.SUITES, "lem01", lambda: [suites.Check("forced", False)])
    code, text = cli.run(["verify", "--lemma", "lem01"])
    assert code == cli.EXIT_FAIL and "FAIL  forced" in text


def test_json_is_deterministic():
    argv = ["--format", "json", "verify", "--lemma", "lem16", "--seed", "3", "--cases", "5"]
    assert cli.run(argv) == cli.run(argv)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "pvk", "reduce", "--example", "1", "--expr", '(ind (cyl "aB"))'],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "verdict: pass" in out.stdout
    out = subprocess.run([sys.executable, "-m", "pvk", "reduce", "--example", "1", "--expr", "(("],
                         capture_output=True, text=True)
    assert out.returncode == 1 and "error" in out.stderr
