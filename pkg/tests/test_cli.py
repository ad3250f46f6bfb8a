from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from conftest import SYSTEMS
from pdmod import cli, parse_system


def call(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    rc = cli.main(argv, stdout=out, stderr=err, stdin=io.StringIO(stdin) if stdin is not None else None)
    return rc, out.getvalue(), err.getvalue()


@pytest.fixture
def pds(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.pds"
        path.write_text(SYSTEMS[name])
        return str(path)

    return write


@pytest.mark.parametrize("command", cli.COMMANDS)
def test_every_command_runs(command, pds):
    rc, out, err = call([command, pds("two_points"), "--format", "json"])
    assert rc == 0, err
    report = json.loads(out)
    assert report["schema"] == 1 and report["command"] == command


def test_json_is_deterministic(pds):
    path = pds("primary3")
    first = call(["full", path, "--format", "json"])[1]
    second = call(["full", path, "--format", "json"])[1]
    assert first == second


def test_echoed_input_round_trips(pds):
    rc, out, _ = call(["complete", pds("macaulay"), "--format", "json"])
    report = json.loads(out)
    assert parse_system(report["input"]) == parse_system(SYSTEMS["macaulay"])


def test_involution_fragment(pds):
    report = json.loads(call(["complete", pds("macaulay"), "--format", "json"])[1])
    frag = report["involution"]
    assert frag["order"] == 2 and frag["class_counts"] == [1, 2, 1]
    assert len(frag["equations"]) == 4


def test_characters_fragment(pds):
    report = json.loads(call(["characters", pds("primary2"), "--format", "json"])[1])
    frag = report["characters"]
    assert frag["codim"] == 2 and frag["finite_type"] and frag["solution_dim"] == 4


def test_stdin_and_inline_input():
    rc, out, _ = call(["characters", "-", "--format", "json"], stdin=SYSTEMS["oscillator"])
    assert rc == 0 and json.loads(out)["characters"]["solution_dim"] == 2
    rc, out, _ = call(["characters", SYSTEMS["oscillator"], "--format", "json"])
    assert rc == 0 and json.loads(out)["characters"]["solution_dim"] == 2


def test_text_output(pds):
    rc, out, _ = call(["generators", pds("primary3")])
    assert rc == 0
    assert "generators: 1" in out and "a^(1,1,1)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus", "x.pds"],
        ["complete"],
        ["complete", "/no/such/file.pds"],
        ["complete", "n=1\ny[1]=0\n", "--set", "a"],
        ["complete", "n=1\ny[1]=0\n", "--set", "a=pi"],
        ["complete", "n=1\ny[1]=0\n", "--set", "b=1"],
    ],
)
def test_usage_errors_exit_2(argv):
    rc, out, err = call(argv)
    assert rc == 2 and not out and err


def test_parse_errors_exit_2():
    rc, _, err = call(["complete", "n=1\ny[1] + = 0\n"])
    assert rc == 2 and "line 2" in err


def test_stage_errors_exit_3():
    rc, out, err = call(["generators", "n=1\ny[2]+y[0]=0\n"])
    assert rc == 3 and not out
    assert "NonRationalEigenvalue" in err and "__" not in err
    rc, _, err = call(["complete", SYSTEMS["macaulay"], "--max-rounds", "1"])
    assert rc == 3


def test_module_entry_point(pds):
    proc = subprocess.run(
        [sys.executable, "-m", "pdmod", "characters", pds("oscillator"), "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["characters"]["solution_dim"] == 2
