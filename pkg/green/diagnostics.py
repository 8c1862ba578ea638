"""
Source spans, diagnostics and the toolchain's own error hierarchy.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional

from colorama import Fore, Style
from pydantic import BaseModel, ConfigDict


@dataclass(frozen=True)
class Span:
    """A region of source text. Columns count Unicode scalar values."""
    offset: int = 0
    length: int = 0
    line: int = 1
    column: int = 1

    def end(self) -> int:
        return self.offset + self.length

    def cover(self, other: "Span") -> "Span":
        """Smallest span containing both spans."""
        first, last = (self, other) if self.offset <= other.offset else (other, self)
        stop = max(first.end(), last.end())
        return Span(first.offset, stop - first.offset, first.line, first.column)


NO_SPAN = Span()


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Category(str, Enum):
    LEX = "lex"
    PARSE = "parse"
    TYPE = "type"
    RUNTIME = "runtime"


class Diagnostic(BaseModel):
    """A located error or warning reported to the user."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    severity: Severity
    code: str
    message: str
    span: Span = NO_SPAN
    category: Category = Category.TYPE
    file: str = "<input>"

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def render(self, color: bool = False) -> str:
        label = f"{self.severity.value}[{self.code}]"
        if color:
            tint = Fore.RED if self.is_error else Fore.YELLOW
            label = f"{tint}{Style.BRIGHT}{label}{Style.RESET_ALL}"
        return f"{self.file}:{self.span.line}:{self.span.column}: {label}: {self.message}"


def error(code: str, message: str, span: Span = NO_SPAN,
          category: Category = Category.TYPE, file: str = "<input>") -> Diagnostic:
    return Diagnostic(severity=Severity.ERROR, code=code, message=message,
                      span=span, category=category, file=file)


def warning(code: str, message: str, span: Span = NO_SPAN,
            category: Category = Category.TYPE, file: str = "<input>") -> Diagnostic:
    return Diagnostic(severity=Severity.WARNING, code=code, message=message,
                      span=span, category=category, file=file)


def sort_diagnostics(diagnostics: Iterable[Diagnostic]) -> List[Diagnostic]:
    return sorted(diagnostics, key=lambda d: (d.file, d.span.offset, d.code, d.message))


class GreenError(Exception):
    """Root of the toolchain's exceptions."""


class DiagnosticError(GreenError):
    """An error that carries one or more diagnostics."""

    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0].render() if self.diagnostics else "no diagnostics"
        super().__init__(first)

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]


class LexError(DiagnosticError):
    """Raised by the lexer; carries every lexical error found."""

    @property
    def span(self) -> Span:
        return self.diagnostics[0].span

    @property
    def message(self) -> str:
        return self.diagnostics[0].message

    @property
    def category(self) -> str:
        return self.diagnostics[0].code


class ParseError(DiagnosticError):
    """Raised when a source file does not follow the grammar."""


class CheckError(DiagnosticError):
    """Raised when static checking finds errors."""


class ManifestError(GreenError):
    """Malformed allowed-set manifest."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class UsageError(GreenError):
    """Bad command-line usage."""


class InternalError(GreenError):
    """A broken invariant inside the toolchain itself."""
