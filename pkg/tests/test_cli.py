"""Command-line parsing and the check/run/dump commands."""

import io
from pathlib import Path

import pytest

from green.cli import CliConfig, execute, main, parse_args, split_program_args
from green.config import GreenSettings
from green.diagnostics import UsageError

HELLO = """object Hello
  public:
    proc run( args : array(String)[] )
      begin
      Out.writeln("Hello ", args.getSize());
      end
end
"""

BROKEN = """object Hello
  public:
    proc run()
      begin
      count = 1;
      end
end
"""

FAILING = """object Hello
  public:
    proc run()
      var zero : integer;
      begin
      Out.writeln(1 / zero);
      end
end
"""


@pytest.fixture
def hello_file(tmp_path: Path) -> Path:
    path = tmp_path / "hello.green"
    path.write_text(HELLO, encoding="utf-8")
    return path


def _run(config: CliConfig, stdin: str = ""):
    out, err = io.StringIO(), io.StringIO()
    status = execute(config, io.StringIO(stdin), out, err)
    return status, out.getvalue(), err.getvalue()


def test_program_arguments_follow_double_dash() -> None:
    own, program = split_program_args(["run", "a.green", "--entry", "A", "--", "x", "--no-assert"])
    assert own == ["run", "a.green", "--entry", "A"]
    assert program == ["x", "--no-assert"]
    assert split_program_args(["check", "a.green"]) == (["check", "a.green"], [])


def test_flags_override_settings() -> None:
    base = GreenSettings(assertions=True, color=True)
    config = parse_args(["run", "a.green", "--entry", "A", "--no-assert", "--no-color",
                         "--reflect", "calls", "--strict-loop-var"], base)
    assert config.entry == "A"
    assert not config.assertions
    assert not config.color
    assert config.reflect_calls and not config.reflect_classes
    assert config.strict_loop_var
    settings = config.settings(base)
    assert not settings.assertions and settings.reflect_calls


def test_settings_come_from_environment(monkeypatch) -> None:
    monkeypatch.setenv("GREEN_ASSERTIONS", "false")
    monkeypatch.setenv("GREEN_MAX_CALL_DEPTH", "100")
    settings = GreenSettings()
    assert settings.assertions is False
    assert settings.max_call_depth == 100
    assert parse_args(["check", "a.green"], settings).assertions is False


def test_run_needs_an_entry() -> None:
    with pytest.raises(UsageError):
        parse_args(["run", "a.green"])


def test_unknown_reflect_level() -> None:
    with pytest.raises(UsageError):
        parse_args(["check", "a.green", "--reflect", "everything"])


def test_run_command(hello_file: Path) -> None:
    config = parse_args(["run", str(hello_file), "--entry", "Hello", "--", "a", "b"])
    status, out, err = _run(config)
    assert status == 0
    assert out == "Hello 2\n"
    assert err == ""


def test_check_reports_diagnostics(tmp_path: Path) -> None:
    path = tmp_path / "broken.green"
    path.write_text(BROKEN, encoding="utf-8")
    status, out, err = _run(parse_args(["check", str(path), "--no-color"]))
    assert status == 1
    assert out == ""
    assert f"{path}:5:7: error[unknown-name]" in err


def test_uncaught_exception_status(tmp_path: Path) -> None:
    path = tmp_path / "failing.green"
    path.write_text(FAILING, encoding="utf-8")
    status, out, err = _run(parse_args(["run", str(path), "--entry", "Hello"]))
    assert status == 1
    assert err == "Exception DivisionByZeroException not caught\n"


def test_dump_commands(hello_file: Path) -> None:
    status, out, _ = _run(parse_args(["dump-ast", str(hello_file)]))
    assert status == 0
    assert out.startswith("object Hello\n")
    assert 'Out.writeln("Hello ", args.getSize());' in out
    status, out, _ = _run(parse_args(["dump-types", str(hello_file)]))
    assert status == 0
    assert "    run(array(String)[])" in out


def test_main_exit_codes(hello_file: Path, tmp_path: Path) -> None:
    assert main(["check", str(hello_file)]) == 0
    assert main(["run", str(hello_file)]) == 2
    assert main(["run", str(hello_file), "--entry", "Missing"]) == 2
    assert main(["check", str(tmp_path / "absent.green")]) == 2
    assert main(["frobnicate", str(hello_file)]) == 2
