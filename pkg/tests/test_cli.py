"""CLI runs byte-compared against committed fixtures.

Each ``fixtures/cli/NAME.cmd`` holds one command line (without the program
name); ``NAME.out`` is its exact standard output and ``NAME.code`` the exit
status.  Regenerate with ``python3 tests/test_cli.py --regen`` after an
intended output change, and review the diff.
"""

import io
import json
import os
import re
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from eisenbox.cli import run

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures" / "cli"
README = HERE.parent / "README.md"
CASES = sorted(p.stem for p in FIXTURES.glob("*.cmd"))


def _run(name):
    argv = shlex.split((FIXTURES / f"{name}.cmd").read_text())
    buf = io.StringIO()
    code = run(argv, buf)
    return buf.getvalue(), code


@pytest.mark.parametrize("name", CASES)
def test_fixture(name, capsys):
    out, code = _run(name)
    assert out == (FIXTURES / f"{name}.out").read_text()
    assert code == int((FIXTURES / f"{name}.code").read_text())
    err = capsys.readouterr().err
    if code:
        assert err.startswith("eisenbox: ")
        if out.lstrip().startswith("{"):
            assert json.loads(out)["exit"] == code


def test_readme_examples_are_fixtures():
    # every "$ eisenbox ..." line in the README must be a fixture, with the output shown below it
    text = README.read_text()
    blocks = re.findall(r"```console\n\$ eisenbox (.*?)\n(.*?)```", text, re.S)
    assert blocks
    by_cmd = {(FIXTURES / f"{n}.cmd").read_text().strip(): n for n in CASES}
    for cmd, shown in blocks:
        assert cmd in by_cmd, f"README command without a fixture: {cmd}"
        assert shown == (FIXTURES / f"{by_cmd[cmd]}.out").read_text()


def test_help_and_unknown_verb():
    assert run(["--help"], io.StringIO()) == 0
    assert run(["frobnicate"], io.StringIO()) == 2


def test_schema_error_exit_code(tmp_path):
    buf = io.StringIO()
    assert run(["graded", "psi", "--omega", "1,2", "--beta", "1,x", "--lambda", "1"], buf) == 2


def test_console_script_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "eisenbox.cli", "eisenstein", "--poly", "y^2-(1+x)", "--seed", "1", "--order", "50"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout == (FIXTURES / "eisenstein_certify.out").read_text()


def test_factor_cap_environment(monkeypatch):
    # a tiny cap still certifies 2-smooth data; the override is read per call
    monkeypatch.setenv("EISENBOX_FACTOR_CAP", "1000")
    out, code = _run("eisenstein_certify")
    assert code == 0


if __name__ == "__main__" and "--regen" in sys.argv:
    for name in CASES:
        out, code = _run(name)
        (FIXTURES / f"{name}.out").write_text(out)
        (FIXTURES / f"{name}.code").write_text(f"{code}\n")
        print(name, code)
