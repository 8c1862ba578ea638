"""
The ``greenc`` command line.

    greenc check FILE...
    greenc run --entry NAME FILE... [-- ARGS...]
    greenc dump-ast FILE...
    greenc dump-types FILE...

Exit status: 0 on success, 1 when checking reports errors or the program
ends with an uncaught exception, 2 on usage errors, otherwise the status the
program passed to ``Runtime.exit``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Literal, Optional, Sequence, TextIO, Tuple

import colorama
from pydantic import BaseModel, Field, ValidationError, model_validator

from . import __version__
from .checker import check_sources
from .config import GreenSettings, get_settings
from .diagnostics import Diagnostic, DiagnosticError, ManifestError, UsageError
from .manifest import load_manifest
from .parser import parse_source
from .printer import pretty
from .runtime.interpreter import run_program

logger = logging.getLogger(__name__)

COMMANDS = ("check", "run", "dump-ast", "dump-types")
REFLECT_LEVELS = ("classes", "calls", "none")


class CliConfig(BaseModel):
    """One validated invocation."""

    command: Literal["check", "run", "dump-ast", "dump-types"]
    files: List[Path] = Field(min_length=1)
    entry: Optional[str] = None
    assertions: bool = True
    reflect_classes: bool = True
    reflect_calls: bool = False
    manifest: Optional[Path] = None
    strict_loop_var: bool = False
    color: bool = True
    log_level: str = "WARNING"
    program_args: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _run_needs_entry(self) -> "CliConfig":
        if self.command == "run" and not self.entry:
            raise ValueError("run needs --entry NAME")
        return self

    def settings(self, base: Optional[GreenSettings] = None) -> GreenSettings:
        base = base or get_settings()
        return base.model_copy(update={
            "assertions": self.assertions,
            "reflect_classes": self.reflect_classes,
            "reflect_calls": self.reflect_calls,
            "strict_loop_var": self.strict_loop_var,
            "color": self.color,
            "log_level": self.log_level,
        })


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greenc", description="Check and run Green programs.")
    parser.add_argument("--version", action="version", version=f"greenc {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("files", nargs="+", type=Path, metavar="FILE")
    parser.add_argument("--entry", help="class object whose run method starts the program")
    parser.add_argument("--no-assert", dest="assertions", action="store_false", default=None,
                        help="do not evaluate assert clauses")
    parser.add_argument("--reflect", metavar="LEVELS",
                        help="comma-separated reflective information to keep: classes, calls or none")
    parser.add_argument("--manifest", type=Path, help="allowed sets of shells and extensions")
    parser.add_argument("--strict-loop-var", action="store_true", default=None,
                        help="reading a for variable after its loop is an error")
    parser.add_argument("--no-color", dest="color", action="store_false", default=None)
    parser.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    return parser


def split_program_args(argv: Sequence[str]) -> Tuple[List[str], List[str]]:
    """Arguments before ``--`` are for greenc, the rest for the program."""
    argv = list(argv)
    if "--" in argv:
        at = argv.index("--")
        return argv[:at], argv[at + 1:]
    return argv, []


def parse_args(argv: Sequence[str], base: Optional[GreenSettings] = None) -> CliConfig:
    base = base or get_settings()
    own, program_args = split_program_args(argv)
    args = build_parser().parse_args(own)
    values = {
        "command": args.command,
        "files": args.files,
        "entry": args.entry,
        "assertions": base.assertions if args.assertions is None else args.assertions,
        "reflect_classes": base.reflect_classes,
        "reflect_calls": base.reflect_calls,
        "manifest": args.manifest,
        "strict_loop_var": base.strict_loop_var if args.strict_loop_var is None else True,
        "color": base.color if args.color is None else args.color,
        "log_level": args.log_level or base.log_level,
        "program_args": program_args,
    }
    if args.reflect is not None:
        levels = {level.strip() for level in args.reflect.split(",") if level.strip()}
        unknown = levels - set(REFLECT_LEVELS)
        if unknown:
            raise UsageError(f"unknown --reflect level {sorted(unknown)[0]!r}")
        values["reflect_classes"] = "classes" in levels
        values["reflect_calls"] = "calls" in levels
    try:
        return CliConfig(**values)
    except ValidationError as exc:
        raise UsageError("; ".join(error["msg"] for error in exc.errors())) from exc


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def report(diagnostics: Sequence[Diagnostic], stream: TextIO, color: bool) -> None:
    for diagnostic in diagnostics:
        stream.write(diagnostic.render(color) + "\n")


def read_sources(files: Sequence[Path]) -> List[Tuple[str, str]]:
    sources = []
    for path in files:
        try:
            sources.append((str(path), path.read_text(encoding="utf-8")))
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return sources


def execute(config: CliConfig, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None,
            stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    settings = config.settings()
    color = settings.color and stderr.isatty()
    sources = read_sources(config.files)
    try:
        if config.command == "dump-ast":
            for filename, text in sources:
                stdout.write(pretty(parse_source(text, filename)))
            return 0
        manifest = load_manifest(config.manifest) if config.manifest is not None else None
        program = check_sources(sources, settings, manifest)
    except DiagnosticError as exc:
        report(exc.diagnostics, stderr, color)
        return 1
    report(program.warnings, stderr, color)
    if config.command == "check":
        return 0
    if config.command == "dump-types":
        stdout.write(program.dump_types())
        return 0
    return run_program(program, config.entry, config.program_args, settings, stdin, stdout, stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    colorama.just_fix_windows_console()
    try:
        config = parse_args(argv)
        configure_logging(config.log_level)
        logger.debug("greenc %s on %d files", config.command, len(config.files))
        return execute(config)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (UsageError, ManifestError) as exc:
        sys.stderr.write(f"greenc: {exc}\n")
        return 2
