"""Tests for the Green lexer."""

import numpy as np
import pytest

from green.diagnostics import LexError
from green.lexer import TokenKind, reconstruct, scan, tokenize


def _kinds(source: str):
    return [token.kind for token in tokenize(source)[:-1]]


def test_identifiers_keywords_and_operators() -> None:
    tokens = tokenize("proc run() begin x = y << 2; end")
    assert [t.lexeme for t in tokens[:-1]] == [
        "proc", "run", "(", ")", "begin", "x", "=", "y", "<<", "2", ";", "end"]
    assert tokens[0].kind is TokenKind.KEYWORD
    assert tokens[1].kind is TokenKind.IDENT
    assert tokens[-1].kind is TokenKind.EOF


def test_longest_operator_wins() -> None:
    tokens = tokenize("a <> b ... <= ++")
    assert [t.text for t in tokens[:-1]] == ["a", "<>", "b", "...", "<=", "++"]


def test_number_literals_and_suffixes() -> None:
    tokens = tokenize("10 200b 7L 1.5 2.5d 3r 1e3")
    kinds = [t.kind for t in tokens[:-1]]
    assert kinds == [TokenKind.INTEGER, TokenKind.BYTE, TokenKind.LONG, TokenKind.REAL,
                     TokenKind.DOUBLE, TokenKind.REAL, TokenKind.REAL]
    assert tokens[0].value == 10
    assert tokens[1].value == 200
    assert tokens[2].value == 7
    assert isinstance(tokens[3].value, np.float32)
    assert tokens[3].value == np.float32(1.5)
    assert tokens[4].value == 2.5
    assert tokens[6].value == np.float32(1000.0)


def test_character_and_string_escapes() -> None:
    tokens = tokenize(r"'a' '\n' '\x41' " + '"tab\\there"')
    assert [t.value for t in tokens[:-1]] == ["a", "\n", "A", "tab\there"]
    assert tokens[0].kind is TokenKind.CHAR
    assert tokens[3].kind is TokenKind.STRING


def test_booleans_are_literals() -> None:
    tokens = tokenize("true false")
    assert [t.kind for t in tokens[:-1]] == [TokenKind.BOOLEAN, TokenKind.BOOLEAN]
    assert [t.value for t in tokens[:-1]] == [True, False]


def test_nested_comments_are_skipped() -> None:
    assert [t.lexeme for t in tokenize("/* a /* b */ c */ x // tail\ny")[:-1]] == ["x", "y"]


def test_assertion_is_an_alias_of_assert() -> None:
    token = tokenize("assertion")[0]
    assert token.kind is TokenKind.KEYWORD
    assert token.is_kw("assert")
    assert token.lexeme == "assertion"


def test_spans_count_lines_and_columns() -> None:
    tokens = tokenize("x\n  yy")
    assert (tokens[1].span.line, tokens[1].span.column) == (2, 3)
    assert tokens[1].span.length == 2


@pytest.mark.parametrize("source, code", [
    ('"never closed', "lex-unterminated-string"),
    ("/* open", "lex-unterminated-comment"),
    ("12abc", "lex-bad-number"),
    ("2147483648", "lex-bad-number"),
    ("256b", "lex-bad-number"),
    ("1.5L", "lex-bad-number"),
    ("'ab'", "lex-bad-char"),
    ("''", "lex-bad-char"),
    (r"'\q'", "lex-bad-escape"),
    ("x $ y", "lex-bad-char"),
])
def test_lexical_errors(source: str, code: str) -> None:
    with pytest.raises(LexError) as info:
        tokenize(source)
    assert info.value.category == code


def test_every_error_is_reported() -> None:
    _, diagnostics = scan('x = $;\ny = "open\nz = 1;')
    errors = [d for d in diagnostics if d.is_error]
    assert [d.span.line for d in errors] == [1, 2]


def test_identifiers_differing_only_in_case_warn() -> None:
    _, diagnostics = scan("count Count count")
    assert len(diagnostics) == 1
    assert diagnostics[0].code == "lex-case"
    assert not diagnostics[0].is_error


def test_tokens_rebuild_the_source() -> None:
    source = "proc f( a : integer ) /* note */ : integer\n  begin\n  return a * 2; // double\n  end\n"
    assert reconstruct(source, tokenize(source)) == source


def test_large_long_literal() -> None:
    token = tokenize("9223372036854775807L")[0]
    assert token.kind is TokenKind.LONG
    assert token.value == 2**63 - 1
