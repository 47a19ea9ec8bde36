"""Formatting checks: a small fixed rule set counted per file.

Rules: long lines, trailing whitespace, tab indentation, missing space
after a comma, and multiple statements on one line. Commas count per
occurrence; the line-based rules count once per offending line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexer import TokenKind, lex, physical_lines, significant

RULE_LINE_LENGTH = "line-length"
RULE_TRAILING_WHITESPACE = "trailing-whitespace"
RULE_TAB_INDENT = "tab-indent"
RULE_COMMA_SPACING = "comma-spacing"
RULE_STATEMENT_PACKING = "statement-packing"


@dataclass(frozen=True)
class StyleViolation:
    line: int
    rule: str


def style_violations(source: str, max_line_length: int = 80, tokens=None) -> list[StyleViolation]:
    """Every violation in ``source``, ordered by line then rule id."""
    if max_line_length < 1:
        raise ValueError(f"max_line_length must be >= 1, got {max_line_length}")
    if tokens is None:
        tokens = lex(source).tokens
    lines = physical_lines(source)
    found: list[StyleViolation] = []

    for number, text in enumerate(lines, start=1):
        if len(text) > max_line_length:
            found.append(StyleViolation(number, RULE_LINE_LENGTH))
        if text and text[-1] in " \t":
            found.append(StyleViolation(number, RULE_TRAILING_WHITESPACE))
        indent = text[: len(text) - len(text.lstrip(" \t"))]
        if "\t" in indent:
            found.append(StyleViolation(number, RULE_TAB_INDENT))

    # Token-level rules; strings and comments are already out of the way.
    depth = 0
    statement_ends: dict[int, int] = {}
    for tok in significant(tokens):
        if tok.kind is TokenKind.PUNCTUATION:
            if tok.text == "(":
                depth += 1
            elif tok.text == ")":
                depth = max(0, depth - 1)
            elif tok.text == ",":
                text = lines[tok.line - 1]
                if tok.column < len(text) and text[tok.column] not in " \t":
                    found.append(StyleViolation(tok.line, RULE_COMMA_SPACING))
            elif tok.text == ";" and depth == 0:
                # for(;;) separators sit at depth >= 1 and never count
                statement_ends[tok.line] = statement_ends.get(tok.line, 0) + 1
    for number, ends in statement_ends.items():
        if ends >= 2:
            found.append(StyleViolation(number, RULE_STATEMENT_PACKING))

    found.sort(key=lambda v: (v.line, v.rule))
    return found


def style_errors(source: str, max_line_length: int = 80, tokens=None) -> int:
    return len(style_violations(source, max_line_length, tokens))
