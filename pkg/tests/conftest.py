"""
Shared fixtures: check and run Green source held in test strings.
"""

import io
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from green.checker import CheckedProgram, check_sources
from green.config import GreenSettings
from green.manifest import Manifest
from green.runtime.interpreter import run_program

CORPUS_DIR = project_root / "data" / "corpus"


@dataclass
class RunResult:
    status: int
    stdout: str
    stderr: str


def check_text(text: str, manifest: Optional[Manifest] = None, **settings) -> CheckedProgram:
    return check_sources([("test.green", text)], GreenSettings(**settings), manifest)


def run_text(text: str, entry: str = "Main", args: Sequence[str] = (), stdin: str = "",
             manifest: Optional[Manifest] = None, **settings) -> RunResult:
    config = GreenSettings(**settings)
    program = check_sources([("test.green", text)], config, manifest)
    out, err = io.StringIO(), io.StringIO()
    status = run_program(program, entry, args, config, io.StringIO(stdin), out, err)
    return RunResult(status, out.getvalue(), err.getvalue())


def main_program(body: str, locals_: str = "", members: str = "") -> str:
    """A class object Main whose run method has ``body``."""
    return (
        "object Main\n"
        "  public:\n"
        "    proc run()\n"
        f"      {locals_}\n"
        "      begin\n"
        f"      {body}\n"
        "      end\n"
        f"{members}"
        "end\n"
    )


@pytest.fixture
def check_green() -> Callable[..., CheckedProgram]:
    return check_text


@pytest.fixture
def run_green() -> Callable[..., RunResult]:
    return run_text


@pytest.fixture
def run_main() -> Callable[..., RunResult]:
    """Run a ``Main.run`` body given as text."""
    def run(body: str, locals_: str = "", members: str = "", extra: str = "", **kwargs) -> RunResult:
        return run_text(main_program(body, locals_, members) + extra, **kwargs)
    return run
