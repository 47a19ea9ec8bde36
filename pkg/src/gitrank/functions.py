"""Heuristic function-definition extraction from a token stream.

A definition is an identifier, a balanced parameter list, an optional
trailer (qualifiers, ``-> type``, constructor initializers), then a balanced
``{...}`` body. Declarations end in ``;`` instead and are skipped. This is a
heuristic over real-world C/C++, not a parser: macro-heavy or K&R-style code
may be missed, which callers tolerate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexer import SIGNIFICANT_KINDS, Diagnostic, Token, TokenKind


@dataclass(frozen=True)
class FunctionSpan:
    """One recognized definition; ``tokens`` is the body including braces."""

    name: str
    start_line: int
    end_line: int
    tokens: tuple[Token, ...]


# Tokens allowed between the parameter list and the body. Covers cv/ref
# qualifiers, noexcept, trailing return types, pure-virtual "= 0" is a
# declaration so '=' only matters for "= default/delete" which end in ';'.
_TRAILER_OPERATORS = frozenset({":", "->", "&", "&&", "*", "::", "<", ">", "=", "~"})


def _match_group(sig: list[Token], start: int, open_text: str, close_text: str) -> int | None:
    depth = 0
    for i in range(start, len(sig)):
        text = sig[i].text
        if text == open_text:
            depth += 1
        elif text == close_text:
            depth -= 1
            if depth == 0:
                return i
    return None


def _scan_trailer(sig: list[Token], start: int) -> tuple[str, int]:
    """Classify what follows a parameter list.

    Returns ``("body", i)`` with ``i`` at the opening brace, ``("decl", i)``
    with ``i`` at the terminating semicolon, or ``("no", i)`` when the shape
    cannot be a definition. After a ``:`` an ``identifier{...}`` group is a
    constructor member initializer, not the body.
    """
    after_colon = False
    prev_kind: TokenKind | None = None
    i = start
    n = len(sig)
    while i < n:
        tok = sig[i]
        text = tok.text
        if text == "(":
            end = _match_group(sig, i, "(", ")")
            if end is None:
                return ("no", i)
            prev_kind = TokenKind.PUNCTUATION
            i = end + 1
            continue
        if text == "{":
            if after_colon and prev_kind is TokenKind.IDENTIFIER:
                end = _match_group(sig, i, "{", "}")
                if end is None:
                    return ("no", i)
                prev_kind = TokenKind.PUNCTUATION
                i = end + 1
                continue
            return ("body", i)
        if text == ";":
            return ("decl", i)
        if tok.kind in (TokenKind.KEYWORD, TokenKind.IDENTIFIER):
            prev_kind = tok.kind
            i += 1
            continue
        if tok.kind is TokenKind.OPERATOR and text in _TRAILER_OPERATORS:
            if text == ":":
                after_colon = True
            prev_kind = tok.kind
            i += 1
            continue
        if text == "," and after_colon:
            prev_kind = TokenKind.PUNCTUATION
            i += 1
            continue
        if tok.kind is TokenKind.LITERAL and after_colon:
            prev_kind = tok.kind
            i += 1
            continue
        return ("no", i)
    return ("no", i)


def extract_functions(tokens) -> tuple[list[FunctionSpan], list[Diagnostic]]:
    """Scan ``tokens`` for definitions; bodies are skipped once matched.

    Braces left unbalanced at end of input abort the scan with a diagnostic;
    everything recognized before the imbalance is still returned.
    """
    token_list = list(tokens)
    sig_index = [i for i, t in enumerate(token_list) if t.kind in SIGNIFICANT_KINDS]
    sig = [token_list[i] for i in sig_index]

    spans: list[FunctionSpan] = []
    diagnostics: list[Diagnostic] = []
    i = 0
    n = len(sig)
    while i < n:
        tok = sig[i]
        if (
            tok.kind is TokenKind.IDENTIFIER
            and i + 1 < n
            and sig[i + 1].text == "("
            and sig[i + 1].kind is TokenKind.PUNCTUATION
        ):
            close = _match_group(sig, i + 1, "(", ")")
            if close is None:
                diagnostics.append(
                    Diagnostic(tok.line, f"unbalanced parentheses after '{tok.text}'")
                )
                break
            verdict, at = _scan_trailer(sig, close + 1)
            if verdict == "body":
                end = _match_group(sig, at, "{", "}")
                if end is None:
                    diagnostics.append(
                        Diagnostic(tok.line, f"unbalanced braces in function '{tok.text}'")
                    )
                    break
                body = tuple(token_list[sig_index[at] : sig_index[end] + 1])
                spans.append(
                    FunctionSpan(
                        name=tok.text,
                        start_line=tok.line,
                        end_line=sig[end].line,
                        tokens=body,
                    )
                )
                i = end + 1
                continue
            if verdict == "decl":
                i = at + 1
                continue
        i += 1

    return spans, diagnostics


__all__ = ["FunctionSpan", "extract_functions"]
