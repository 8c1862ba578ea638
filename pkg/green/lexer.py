"""
Green lexer.

Turns source text into tokens with spans. Comments (``//`` to end of line and
nestable ``/* */``) and whitespace are skipped; every skipped region is still
recoverable from the spans, so the lexemes plus the gaps between them rebuild
the source exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .diagnostics import Category, Diagnostic, LexError, Span, error, warning

logger = logging.getLogger(__name__)


class TokenKind(str, Enum):
    IDENT = "identifier"
    KEYWORD = "keyword"
    CHAR = "char"
    BOOLEAN = "boolean"
    BYTE = "byte"
    INTEGER = "integer"
    LONG = "long"
    REAL = "real"
    DOUBLE = "double"
    STRING = "string"
    OP = "operator"
    EOF = "eof"


LITERAL_KINDS = frozenset({
    TokenKind.CHAR, TokenKind.BOOLEAN, TokenKind.BYTE, TokenKind.INTEGER,
    TokenKind.LONG, TokenKind.REAL, TokenKind.DOUBLE, TokenKind.STRING,
})

KEYWORDS = frozenset({
    "abstract", "after", "and", "array", "assert", "before", "begin", "boolean",
    "break", "byte", "case", "char", "class", "const", "do", "double", "else",
    "end", "endif", "enum", "exception", "false", "for", "if", "init", "integer",
    "long", "loop", "nil", "not", "object", "of", "or", "otherwise", "private",
    "proc", "public", "real", "reflective", "repeat", "result", "return", "self",
    "shell", "subclass", "subclassOf", "subtypeOf", "super", "then", "to", "true",
    "try", "type", "until", "var", "while", "xor",
})

# ``assertion`` appears once in the grammar where every example says ``assert``.
KEYWORD_ALIASES = {"assertion": "assert"}

OPERATORS = (
    "...", "<<", ">>", "<=", ">=", "==", "<>", "++", "--",
    "+", "-", "*", "/", "%", "~", "&", "|", "^", "<", ">", "=",
    "(", ")", "[", "]", ".", ",", ";", ":", "#", "@",
)

ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", "'": "'", '"': '"'}

INT_MAX = 2**31 - 1
LONG_MAX = 2**63 - 1
BYTE_MAX = 255


@dataclass
class Token:
    """One lexeme. ``value`` holds the decoded payload of literals."""
    kind: TokenKind
    lexeme: str
    span: Span
    value: Any = None
    # Normalized keyword text (``assertion`` lexes as ``assert``).
    text: str = field(default="")

    def __post_init__(self) -> None:
        if not self.text:
            self.text = self.lexeme

    def is_op(self, *ops: str) -> bool:
        return self.kind is TokenKind.OP and self.text in ops

    def is_kw(self, *words: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.text in words

    def __str__(self) -> str:
        return f"{self.kind.value}({self.lexeme})"


class _Abort(Exception):
    """Stops the current token; the lexer resumes at the next line."""

    def __init__(self, category: str, message: str, span: Span):
        self.category = category
        self.message = message
        self.span = span


class Lexer:
    """Scans one source text. Collects errors and case-collision warnings."""

    def __init__(self, source: str, filename: str = "<input>"):
        self.source = source
        self.filename = filename
        self.pos = 0
        self.line = 1
        self.column = 1
        self.tokens: List[Token] = []
        self.errors: List[Diagnostic] = []
        self.warnings: List[Diagnostic] = []

    # -- cursor helpers -------------------------------------------------

    def _peek(self, ahead: int = 0) -> str:
        index = self.pos + ahead
        return self.source[index] if index < len(self.source) else ""

    def _advance(self, count: int = 1) -> None:
        for _ in range(count):
            if self.pos >= len(self.source):
                return
            if self.source[self.pos] == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
            self.pos += 1

    def _mark(self) -> Tuple[int, int, int]:
        return self.pos, self.line, self.column

    def _span_from(self, mark: Tuple[int, int, int]) -> Span:
        offset, line, column = mark
        return Span(offset, self.pos - offset, line, column)

    # -- driver ---------------------------------------------------------

    def run(self) -> List[Token]:
        while True:
            try:
                self._skip_trivia()
                if self.pos >= len(self.source):
                    break
                self.tokens.append(self._next_token())
            except _Abort as abort:
                self.errors.append(error(f"lex-{abort.category}", abort.message, abort.span,
                                         Category.LEX, self.filename))
                self._skip_line()
        self.tokens.append(Token(TokenKind.EOF, "", Span(self.pos, 0, self.line, self.column)))
        self._collect_case_warnings()
        return self.tokens

    def _skip_line(self) -> None:
        while self.pos < len(self.source) and self.source[self.pos] != "\n":
            self._advance()
        self._advance()

    def _skip_trivia(self) -> None:
        while self.pos < len(self.source):
            ch = self._peek()
            if ch in " \t\r\n\f":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self.pos < len(self.source) and self._peek() != "\n":
                    self._advance()
            elif ch == "/" and self._peek(1) == "*":
                self._skip_block_comment()
            else:
                return

    def _skip_block_comment(self) -> None:
        mark = self._mark()
        depth = 0
        while self.pos < len(self.source):
            if self._peek() == "/" and self._peek(1) == "*":
                depth += 1
                self._advance(2)
            elif self._peek() == "*" and self._peek(1) == "/":
                depth -= 1
                self._advance(2)
                if depth == 0:
                    return
            else:
                self._advance()
        span = Span(mark[0], 2, mark[1], mark[2])
        raise _Abort("unterminated-comment", "comment is never closed", span)

    def _next_token(self) -> Token:
        ch = self._peek()
        if ch.isascii() and ch.isalpha():
            return self._identifier()
        if ch.isascii() and ch.isdigit():
            return self._number()
        if ch == "'":
            return self._char()
        if ch == '"':
            return self._string()
        for op in OPERATORS:
            if self.source.startswith(op, self.pos):
                mark = self._mark()
                self._advance(len(op))
                return Token(TokenKind.OP, op, self._span_from(mark))
        mark = self._mark()
        self._advance()
        raise _Abort("bad-char", f"unexpected character {ch!r}", self._span_from(mark))

    # -- token classes --------------------------------------------------

    def _identifier(self) -> Token:
        mark = self._mark()
        while self._peek() and self._peek().isascii() and (self._peek().isalnum() or self._peek() == "_"):
            self._advance()
        span = self._span_from(mark)
        lexeme = self.source[span.offset:span.end()]
        if lexeme in ("true", "false"):
            return Token(TokenKind.BOOLEAN, lexeme, span, lexeme == "true")
        if lexeme in KEYWORD_ALIASES:
            return Token(TokenKind.KEYWORD, lexeme, span, text=KEYWORD_ALIASES[lexeme])
        if lexeme in KEYWORDS:
            return Token(TokenKind.KEYWORD, lexeme, span)
        return Token(TokenKind.IDENT, lexeme, span)

    def _digits(self) -> None:
        while self._peek().isascii() and self._peek().isdigit():
            self._advance()

    def _number(self) -> Token:
        mark = self._mark()
        self._digits()
        is_float = False
        if self._peek() == "." and self._peek(1).isascii() and self._peek(1).isdigit():
            is_float = True
            self._advance()
            self._digits()
        if self._peek() in ("e", "E"):
            sign = 1 if self._peek(1) in ("+", "-") else 0
            following = self._peek(1 + sign)
            if following.isascii() and following.isdigit():
                is_float = True
                self._advance(1 + sign)
                self._digits()
        body_end = self.pos
        suffix = ""
        if self._peek() in ("b", "i", "L", "r", "d"):
            suffix = self._peek()
            self._advance()
        trailing = self._peek()
        if trailing and trailing.isascii() and (trailing.isalnum() or trailing == "_"):
            while self._peek().isascii() and (self._peek().isalnum() or self._peek() == "_") and self._peek():
                self._advance()
            raise _Abort("bad-number", "malformed number literal", self._span_from(mark))
        span = self._span_from(mark)
        lexeme = self.source[span.offset:span.end()]
        body = self.source[mark[0]:body_end]
        if is_float and suffix in ("b", "i", "L"):
            raise _Abort("bad-number", f"suffix '{suffix}' needs an integral number", span)
        if is_float or suffix in ("r", "d"):
            return self._float_token(lexeme, body, suffix, span)
        value = int(body)
        if suffix == "b":
            if value > BYTE_MAX:
                raise _Abort("bad-number", f"byte literal {body} out of range 0..255", span)
            return Token(TokenKind.BYTE, lexeme, span, value)
        if suffix == "L":
            if value > LONG_MAX:
                raise _Abort("bad-number", f"long literal {body} is too large", span)
            return Token(TokenKind.LONG, lexeme, span, value)
        if value > INT_MAX:
            raise _Abort("bad-number", f"integer literal {body} does not fit in 32 bits", span)
        return Token(TokenKind.INTEGER, lexeme, span, value)

    def _float_token(self, lexeme: str, body: str, suffix: str, span: Span) -> Token:
        from .runtime.numeric import to_real

        value = float(body)
        if suffix == "d":
            if value == float("inf"):
                raise _Abort("bad-number", f"double literal {body} overflows", span)
            return Token(TokenKind.DOUBLE, lexeme, span, value)
        real = to_real(value)
        if real in (float("inf"), float("-inf")):
            raise _Abort("bad-number", f"real literal {body} overflows", span)
        return Token(TokenKind.REAL, lexeme, span, real)

    def _escape(self, quote: str) -> str:
        mark = self._mark()
        self._advance()  # backslash
        ch = self._peek()
        if ch in ESCAPES:
            self._advance()
            return ESCAPES[ch]
        if ch == "x":
            self._advance()
            digits = ""
            while len(digits) < 2 and self._peek() and self._peek() in "0123456789abcdefABCDEF":
                digits += self._peek()
                self._advance()
            if len(digits) == 2:
                return chr(int(digits, 16))
        raise _Abort("bad-escape", f"invalid escape sequence in {quote} literal", self._span_from(mark))

    def _char(self) -> Token:
        mark = self._mark()
        self._advance()
        ch = self._peek()
        if ch in ("", "\n", "'"):
            raise _Abort("bad-char", "empty or unterminated character constant", self._span_from(mark))
        if ch == "\\":
            value = self._escape("char")
        else:
            value = ch
            self._advance()
        if self._peek() != "'":
            raise _Abort("bad-char", "character constant must hold exactly one character",
                         self._span_from(mark))
        self._advance()
        span = self._span_from(mark)
        if ord(value) > 0x7F:
            raise _Abort("bad-char", "character constant outside 0..127", span)
        return Token(TokenKind.CHAR, self.source[span.offset:span.end()], span, value)

    def _string(self) -> Token:
        mark = self._mark()
        self._advance()
        chars: List[str] = []
        while True:
            ch = self._peek()
            if ch in ("", "\n"):
                raise _Abort("unterminated-string", "string literal is never closed",
                             self._span_from(mark))
            if ch == '"':
                self._advance()
                break
            if ch == "\\":
                chars.append(self._escape("string"))
            else:
                chars.append(ch)
                self._advance()
        span = self._span_from(mark)
        return Token(TokenKind.STRING, self.source[span.offset:span.end()], span, "".join(chars))

    def _collect_case_warnings(self) -> None:
        seen: Dict[str, Token] = {}
        reported = set()
        for token in self.tokens:
            if token.kind is not TokenKind.IDENT:
                continue
            folded = token.lexeme.lower()
            first = seen.setdefault(folded, token)
            pair = (first.lexeme, token.lexeme)
            if first.lexeme != token.lexeme and pair not in reported:
                reported.add(pair)
                self.warnings.append(warning(
                    "lex-case", f"identifiers '{first.lexeme}' and '{token.lexeme}' differ only in case",
                    token.span, Category.LEX, self.filename))


def tokenize(source: str, filename: str = "<input>") -> List[Token]:
    """Tokenize ``source``; the result always ends with an EOF token.

    Raises LexError carrying every lexical error when any is found.
    """
    lexer = Lexer(source, filename)
    tokens = lexer.run()
    if lexer.errors:
        raise LexError(lexer.errors)
    logger.debug("%s: %d tokens", filename, len(tokens))
    return tokens


def scan(source: str, filename: str = "<input>") -> Tuple[List[Token], List[Diagnostic]]:
    """Tokenize without raising; returns tokens plus errors and warnings."""
    lexer = Lexer(source, filename)
    tokens = lexer.run()
    return tokens, lexer.errors + lexer.warnings


def case_warnings(source: str, filename: str = "<input>") -> List[Diagnostic]:
    lexer = Lexer(source, filename)
    lexer.run()
    return lexer.warnings


def reconstruct(source: str, tokens: List[Token]) -> Optional[str]:
    """Rebuild ``source`` from token lexemes and the trivia between them."""
    pieces: List[str] = []
    cursor = 0
    for token in tokens:
        pieces.append(source[cursor:token.span.offset])
        pieces.append(token.lexeme)
        cursor = token.span.end()
    pieces.append(source[cursor:])
    return "".join(pieces)
