"""Function and module metrics: cyclomatic complexity, Halstead volume,
maintainability index, and source-line counting."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .functions import FunctionSpan
from .lexer import TokenKind, line_break_count, significant

#: Decision points: one added per occurrence, on top of the base path.
DECISION_KEYWORDS = frozenset({"if", "for", "while", "case", "catch"})
DECISION_OPERATORS = frozenset({"?", "&&", "||"})

#: Token kinds counted as Halstead operators; identifiers and literals
#: are the operands.
_OPERATOR_KINDS = frozenset(
    {TokenKind.KEYWORD, TokenKind.OPERATOR, TokenKind.PUNCTUATION}
)
_OPERAND_KINDS = frozenset({TokenKind.IDENTIFIER, TokenKind.LITERAL})


def cyclomatic_complexity(tokens) -> int:
    """1 + number of decision tokens in the span."""
    count = 1
    for tok in tokens:
        if tok.kind is TokenKind.KEYWORD and tok.text in DECISION_KEYWORDS:
            count += 1
        elif tok.kind is TokenKind.OPERATOR and tok.text in DECISION_OPERATORS:
            count += 1
    return count


@dataclass(frozen=True)
class HalsteadCounts:
    total_operators: int
    total_operands: int
    distinct_operators: int
    distinct_operands: int

    @property
    def length(self) -> int:
        return self.total_operators + self.total_operands

    @property
    def vocabulary(self) -> int:
        return self.distinct_operators + self.distinct_operands

    @property
    def volume(self) -> float:
        """N * log2(eta); zero for an empty vocabulary (log2(1) = 0 anyway)."""
        if self.vocabulary == 0:
            return 0.0
        return self.length * math.log2(self.vocabulary)


def halstead_counts(tokens) -> HalsteadCounts:
    total_ops = 0
    total_operands = 0
    op_texts: set[str] = set()
    operand_texts: set[str] = set()
    for tok in tokens:
        if tok.kind in _OPERATOR_KINDS:
            total_ops += 1
            op_texts.add(tok.text)
        elif tok.kind in _OPERAND_KINDS:
            total_operands += 1
            operand_texts.add(tok.text)
    return HalsteadCounts(total_ops, total_operands, len(op_texts), len(operand_texts))


def halstead_volume(tokens) -> float:
    return halstead_counts(tokens).volume


def maintainability_index(volume: float, complexity: float, sloc: float) -> float:
    """171 - 5.2*ln(V) - 0.23*C - 16.2*ln(L).

    Unclamped and unscaled; values can be negative for large inputs.
    """
    if volume <= 0:
        raise ValueError(f"volume must be positive, got {volume}")
    if sloc <= 0:
        raise ValueError(f"sloc must be positive, got {sloc}")
    if complexity < 0:
        raise ValueError(f"complexity must be non-negative, got {complexity}")
    return 171.0 - 5.2 * math.log(volume) - 0.23 * complexity - 16.2 * math.log(sloc)


def count_sloc(tokens) -> int:
    """Physical lines carrying at least one significant token.

    A multi-line token (spliced literal) marks every line it touches.
    """
    lines: set[int] = set()
    for tok in significant(tokens):
        for offset in range(line_break_count(tok.text) + 1):
            lines.add(tok.line + offset)
    return len(lines)


@dataclass(frozen=True)
class FunctionMetrics:
    name: str
    start_line: int
    end_line: int
    cyclomatic_complexity: int
    halstead: HalsteadCounts
    lines: int

    @property
    def halstead_volume(self) -> float:
        return self.halstead.volume


def measure_function(span: FunctionSpan) -> FunctionMetrics:
    """All per-function numbers for one extracted definition."""
    body = significant(span.tokens)
    return FunctionMetrics(
        name=span.name,
        start_line=span.start_line,
        end_line=span.end_line,
        cyclomatic_complexity=cyclomatic_complexity(body),
        halstead=halstead_counts(body),
        lines=span.end_line - span.start_line + 1,
    )
