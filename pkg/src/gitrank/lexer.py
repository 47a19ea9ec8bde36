"""Lossless tokenizer for C-family source text.

Every byte of the input is preserved in exactly one token, so that
``"".join(t.text for t in tokens)`` reproduces the source. The grammar is
deliberately shallow: no preprocessing, no semantic analysis, just enough
structure for counting metrics over real-world C and C++.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"
    LITERAL = "literal"
    COMMENT = "comment"
    WHITESPACE = "whitespace"
    NEWLINE = "newline"


#: Kinds that carry code (everything except comments and spacing).
SIGNIFICANT_KINDS = frozenset(
    {
        TokenKind.IDENTIFIER,
        TokenKind.KEYWORD,
        TokenKind.OPERATOR,
        TokenKind.PUNCTUATION,
        TokenKind.LITERAL,
    }
)


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Diagnostic:
    """A recoverable lexical problem, reported but never fatal."""

    line: int
    message: str


@dataclass(frozen=True)
class LexResult:
    tokens: tuple[Token, ...]
    diagnostics: tuple[Diagnostic, ...]


KEYWORDS = frozenset(
    """
    alignas alignof auto bool break case catch char class const const_cast
    constexpr continue decltype default delete do double dynamic_cast else
    enum explicit export extern false float for friend goto if inline int
    long mutable namespace new noexcept nullptr operator private protected
    public register reinterpret_cast restrict return short signed sizeof
    static static_assert static_cast struct switch template this
    thread_local throw true try typedef typeid typename union unsigned
    using virtual void volatile wchar_t while _Bool _Complex
    """.split()
)

_PUNCTUATION = ("{", "}", "(", ")", "[", "]", ";", ",", "#", "##")
_OPERATORS = (
    "<<=", ">>=", "...", "->*", "<=>",
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "::", ".*",
    "+", "-", "*", "/", "%", "=", "<", ">", "!", "&", "|", "^", "~",
    "?", ":", ".",
)

_SYMBOL_KINDS: dict[str, TokenKind] = {}
for _sym in _PUNCTUATION:
    _SYMBOL_KINDS[_sym] = TokenKind.PUNCTUATION
for _sym in _OPERATORS:
    _SYMBOL_KINDS[_sym] = TokenKind.OPERATOR

_LINE_BREAK = re.compile(r"\r\n|\r|\n")


def physical_lines(text: str) -> list[str]:
    """Split on the same line-break forms the lexer counts (\\r\\n, \\r, \\n)."""
    return _LINE_BREAK.split(text)


def line_break_count(text: str) -> int:
    return sum(1 for _ in _LINE_BREAK.finditer(text))


def _advance(chunk: str, line: int, column: int) -> tuple[int, int]:
    last_end = -1
    breaks = 0
    for match in _LINE_BREAK.finditer(chunk):
        breaks += 1
        last_end = match.end()
    if breaks == 0:
        return line, column + len(chunk)
    return line + breaks, len(chunk) - last_end + 1


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ch == "$" or ch.isalpha() or ord(ch) > 127


def _is_ident_part(ch: str) -> bool:
    return ch == "_" or ch == "$" or ch.isalnum() or ord(ch) > 127


def _scan_line_comment(text: str, pos: int) -> int:
    # A trailing backslash splices the next physical line into the comment.
    n = len(text)
    j = pos + 2
    while j < n:
        ch = text[j]
        if ch in "\r\n":
            if text[j - 1] == "\\":
                j += 2 if ch == "\r" and j + 1 < n and text[j + 1] == "\n" else 1
                continue
            break
        j += 1
    return j


def _scan_block_comment(text: str, pos: int) -> tuple[int, bool]:
    end = text.find("*/", pos + 2)
    if end < 0:
        return len(text), False
    return end + 2, True


def _scan_quoted(text: str, pos: int) -> tuple[int, bool]:
    quote = text[pos]
    n = len(text)
    j = pos + 1
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 1
            if j < n:
                if text[j] == "\r" and j + 1 < n and text[j + 1] == "\n":
                    j += 2
                else:
                    j += 1
            continue
        if ch == quote:
            return j + 1, True
        if ch in "\r\n":
            # Unterminated at end of line; the newline stays outside the token.
            return j, False
        j += 1
    return j, False


def _scan_number(text: str, pos: int) -> int:
    # Preprocessing-number shape: digits, dots, identifier chars, exponent
    # signs after e/E/p/P, and C++14 digit separators.
    n = len(text)
    j = pos
    while j < n:
        ch = text[j]
        if ch.isalnum() or ch in "._":
            j += 1
        elif ch == "'" and j + 1 < n and text[j + 1].isalnum():
            j += 2
        elif ch in "+-" and j > pos and text[j - 1] in "eEpP":
            j += 1
        else:
            break
    return j


def lex(source: str | bytes) -> LexResult:
    """Tokenize ``source`` losslessly, collecting recoverable diagnostics.

    Bytes are decoded as UTF-8 with replacement, so malformed input never
    raises; unterminated strings and comments produce diagnostics and the
    offending text is kept as a single token.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8", errors="replace")
    else:
        text = source

    tokens: list[Token] = []
    diagnostics: list[Diagnostic] = []
    n = len(text)
    pos = 0
    line = 1
    column = 1

    def emit(kind: TokenKind, end: int) -> None:
        nonlocal pos, line, column
        chunk = text[pos:end]
        tokens.append(Token(kind, chunk, line, column))
        line, column = _advance(chunk, line, column)
        pos = end

    while pos < n:
        ch = text[pos]
        nxt = text[pos + 1] if pos + 1 < n else ""
        if ch == "\r" or ch == "\n":
            emit(TokenKind.NEWLINE, pos + (2 if ch == "\r" and nxt == "\n" else 1))
        elif ch in " \t\f\v":
            j = pos + 1
            while j < n and text[j] in " \t\f\v":
                j += 1
            emit(TokenKind.WHITESPACE, j)
        elif ch == "\\" and nxt in ("\n", "\r"):
            end = pos + 2
            if nxt == "\r" and pos + 2 < n and text[pos + 2] == "\n":
                end += 1
            emit(TokenKind.WHITESPACE, end)  # line splice
        elif ch == "/" and nxt == "/":
            emit(TokenKind.COMMENT, _scan_line_comment(text, pos))
        elif ch == "/" and nxt == "*":
            end, closed = _scan_block_comment(text, pos)
            if not closed:
                diagnostics.append(Diagnostic(line, "unterminated block comment"))
            emit(TokenKind.COMMENT, end)
        elif ch == '"' or ch == "'":
            end, closed = _scan_quoted(text, pos)
            if not closed:
                what = "string" if ch == '"' else "character"
                diagnostics.append(Diagnostic(line, f"unterminated {what} literal"))
            emit(TokenKind.LITERAL, end)
        elif ch.isdigit() or (ch == "." and nxt.isdigit()):
            emit(TokenKind.LITERAL, _scan_number(text, pos))
        elif _is_ident_start(ch):
            j = pos + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[pos:j]
            emit(TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER, j)
        else:
            for width in (3, 2, 1):
                kind = _SYMBOL_KINDS.get(text[pos : pos + width])
                if kind is not None:
                    emit(kind, pos + width)
                    break
            else:
                emit(TokenKind.OPERATOR, pos + 1)  # unknown symbol, kept as-is

    return LexResult(tuple(tokens), tuple(diagnostics))


def tokenize(source: str | bytes) -> tuple[Token, ...]:
    """Tokens only; use :func:`lex` when diagnostics matter."""
    return lex(source).tokens


def significant(tokens) -> list[Token]:
    """Drop comments, whitespace and newlines."""
    return [t for t in tokens if t.kind in SIGNIFICANT_KINDS]
