import io
import json
import contextlib
from pathlib import Path

import pytest

from divlab import _parallel
from divlab.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def _reset_workers():
    yield
    _parallel.set_workers(1)


@pytest.fixture
def run_cli(tmp_path, monkeypatch):
    """Run the CLI in-process inside a scratch directory: (exit code, stdout)."""
    monkeypatch.chdir(tmp_path)

    def run(*argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main([str(a) for a in argv])
        return code, buf.getvalue()

    return run


def load_golden(name):
    return json.loads((GOLDEN / f"{name}.json").read_text())


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
