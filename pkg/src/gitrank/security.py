"""Dangerous-call scanning for C-family code.

A rule names a callee identifier and a severity bucket. A hit is the
identifier immediately followed by ``(`` among significant tokens, i.e. a
call site, so mentions in comments, strings, or declarations don't count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .lexer import TokenKind, significant

LOW = "low"
MEDIUM = "medium"
HIGH = "high"
SEVERITIES = (LOW, MEDIUM, HIGH)

_IDENTIFIER = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


class RuleFormatError(ValueError):
    """Raised for malformed rule-table files; message carries the line."""


@dataclass(frozen=True)
class SecurityRule:
    pattern: str
    severity: str
    rationale: str = ""

    def __post_init__(self) -> None:
        if not _IDENTIFIER.fullmatch(self.pattern):
            raise ValueError(f"rule pattern is not an identifier: {self.pattern!r}")
        if self.severity not in SEVERITIES:
            raise ValueError(
                f"unknown severity {self.severity!r} (expected one of {', '.join(SEVERITIES)})"
            )


DEFAULT_SECURITY_RULES: tuple[SecurityRule, ...] = (
    SecurityRule("gets", HIGH, "reads without any bound"),
    SecurityRule("strcpy", HIGH, "copies without a bound"),
    SecurityRule("strcat", HIGH, "appends without a bound"),
    SecurityRule("sprintf", HIGH, "formats into an unbounded buffer"),
    SecurityRule("vsprintf", HIGH, "formats into an unbounded buffer"),
    SecurityRule("system", HIGH, "shells out; injection prone"),
    SecurityRule("popen", HIGH, "shells out; injection prone"),
    SecurityRule("scanf", MEDIUM, "unbounded %s conversions"),
    SecurityRule("sscanf", MEDIUM, "unbounded %s conversions"),
    SecurityRule("strncpy", MEDIUM, "may leave result unterminated"),
    SecurityRule("strncat", MEDIUM, "bound is easy to get wrong"),
    SecurityRule("alloca", MEDIUM, "unchecked stack growth"),
    SecurityRule("tmpnam", MEDIUM, "filename race"),
    SecurityRule("getenv", LOW, "environment is attacker-influenced"),
    SecurityRule("rand", LOW, "not a CSPRNG"),
    SecurityRule("srand", LOW, "not a CSPRNG"),
    SecurityRule("atoi", LOW, "no error detection on input"),
)


class SecurityCounts(NamedTuple):
    low: int
    medium: int
    high: int

    @property
    def total(self) -> int:
        return self.low + self.medium + self.high


def load_security_rules(path: str | Path) -> tuple[SecurityRule, ...]:
    """Parse a rule table: ``pattern severity rationale...`` per line.

    Blank lines and ``#`` comments are skipped. Duplicate patterns and
    unknown severities fail with the offending line number.
    """
    rules: list[SecurityRule] = []
    seen: dict[str, int] = {}
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) < 2:
            raise RuleFormatError(f"{path}: line {number}: expected 'pattern severity [rationale]'")
        pattern, severity = parts[0], parts[1]
        rationale = parts[2] if len(parts) == 3 else ""
        if pattern in seen:
            raise RuleFormatError(
                f"{path}: line {number}: duplicate pattern {pattern!r} (first on line {seen[pattern]})"
            )
        seen[pattern] = number
        try:
            rules.append(SecurityRule(pattern, severity, rationale))
        except ValueError as exc:
            raise RuleFormatError(f"{path}: line {number}: {exc}") from exc
    if not rules:
        raise RuleFormatError(f"{path}: rule table is empty")
    return tuple(rules)


def security_errors(tokens, rules=DEFAULT_SECURITY_RULES) -> SecurityCounts:
    """Count call sites of the ruled identifiers, bucketed by severity."""
    rule_list = tuple(rules)
    if not rule_list:
        raise ValueError("rule table must not be empty")
    severity_of = {r.pattern: r.severity for r in rule_list}
    counts = {LOW: 0, MEDIUM: 0, HIGH: 0}
    sig = significant(tokens)
    for i, tok in enumerate(sig[:-1]):
        if tok.kind is not TokenKind.IDENTIFIER:
            continue
        severity = severity_of.get(tok.text)
        if severity is None:
            continue
        nxt = sig[i + 1]
        if nxt.kind is TokenKind.PUNCTUATION and nxt.text == "(":
            counts[severity] += 1
    return SecurityCounts(counts[LOW], counts[MEDIUM], counts[HIGH])
