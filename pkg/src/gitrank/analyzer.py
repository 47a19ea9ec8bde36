"""Per-file analysis and repository-level aggregation.

Walks a source tree, measures every matching file, and reduces the results
to the six code-quality measures a repository contributes to the measure
table. Measures that cannot be computed (no functions, no code) are left
missing rather than reported as zero, so downstream normalization is never
skewed by fake zeros.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .functions import extract_functions
from .lexer import lex
from .metrics import (
    FunctionMetrics,
    count_sloc,
    maintainability_index,
    measure_function,
)
from .security import (
    DEFAULT_SECURITY_RULES,
    SecurityCounts,
    SecurityRule,
    load_security_rules,
    security_errors,
)
from .style import style_errors

DEFAULT_EXTENSIONS = (
    ".c", ".h", ".cc", ".cpp", ".cxx", ".c++", ".hh", ".hpp", ".hxx", ".inl",
)


@dataclass(frozen=True)
class AnalyzerConfig:
    extensions: tuple[str, ...] = DEFAULT_EXTENSIONS
    max_line_length: int = 80
    security_rules: tuple[SecurityRule, ...] = DEFAULT_SECURITY_RULES

    def __post_init__(self) -> None:
        if not self.extensions:
            raise ValueError("extension allowlist must not be empty")
        if self.max_line_length < 1:
            raise ValueError("max_line_length must be >= 1")
        if not self.security_rules:
            raise ValueError("security rule table must not be empty")


def load_analyzer_config(path: str | Path) -> AnalyzerConfig:
    """Read a JSON config: extensions, max_line_length, security_rules path.

    All keys are optional; a relative rule-table path resolves against the
    config file's directory.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    known = {"extensions", "max_line_length", "security_rules"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"{path}: unknown config keys: {', '.join(sorted(unknown))}")

    kwargs = {}
    if "extensions" in raw:
        exts = raw["extensions"]
        if not isinstance(exts, list) or not all(isinstance(e, str) for e in exts):
            raise ValueError(f"{path}: 'extensions' must be a list of strings")
        kwargs["extensions"] = tuple(exts)
    if "max_line_length" in raw:
        length = raw["max_line_length"]
        if not isinstance(length, int) or isinstance(length, bool):
            raise ValueError(f"{path}: 'max_line_length' must be an integer")
        kwargs["max_line_length"] = length
    if "security_rules" in raw:
        rules_path = raw["security_rules"]
        if not isinstance(rules_path, str):
            raise ValueError(f"{path}: 'security_rules' must be a path string")
        resolved = Path(rules_path)
        if not resolved.is_absolute():
            resolved = path.parent / resolved
        kwargs["security_rules"] = load_security_rules(resolved)
    return AnalyzerConfig(**kwargs)


@dataclass(frozen=True)
class ModuleMetrics:
    """Everything measured for one source file."""

    path: str
    functions: tuple[FunctionMetrics, ...]
    sloc: int
    style_errors: int
    security: SecurityCounts
    maintainability_index: float

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "sloc": self.sloc,
            "style_errors": self.style_errors,
            "security_errors": {
                "low": self.security.low,
                "medium": self.security.medium,
                "high": self.security.high,
            },
            "maintainability_index": self.maintainability_index,
            "functions": [
                {
                    "name": f.name,
                    "start_line": f.start_line,
                    "end_line": f.end_line,
                    "cyclomatic_complexity": f.cyclomatic_complexity,
                    "halstead_volume": f.halstead.volume,
                }
                for f in self.functions
            ],
        }


@dataclass(frozen=True)
class RepoCodeSummary:
    """The code-derived measures of one repository; None means undefined."""

    repo_id: str
    file_count: int
    function_count: int
    total_sloc: int
    cc: float | None
    mi: float | None
    sty: float | None
    sl: float | None
    sm: float | None
    sh: float | None
    #: Recoverable notes (lexer recovery, extraction aborts), informational.
    diagnostics: tuple[str, ...] = ()
    #: Files that could not be read at all; non-empty means partial results.
    skipped: tuple[str, ...] = ()


def analyze_source(label: str, data: bytes | str, config: AnalyzerConfig | None = None) -> tuple[ModuleMetrics, list[str]]:
    """Measure a single file's contents; returns metrics and diagnostics."""
    config = config or AnalyzerConfig()
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    result = lex(text)
    diagnostics = [f"{label}:{d.line}: {d.message}" for d in result.diagnostics]

    spans, extraction_diags = extract_functions(result.tokens)
    diagnostics.extend(f"{label}:{d.line}: {d.message}" for d in extraction_diags)

    functions = tuple(measure_function(s) for s in spans)
    sloc = count_sloc(result.tokens)

    # Module MI feeds totals into the function-level formula; degenerate
    # inputs are floored to keep the logs defined.
    volume = sum(f.halstead.volume for f in functions)
    complexity = sum(f.cyclomatic_complexity for f in functions)
    mi = maintainability_index(max(volume, 1.0), complexity, max(sloc, 1))

    module = ModuleMetrics(
        path=label,
        functions=functions,
        sloc=sloc,
        style_errors=style_errors(text, config.max_line_length, result.tokens),
        security=security_errors(result.tokens, config.security_rules),
        maintainability_index=mi,
    )
    return module, diagnostics


def _mean(values) -> float | None:
    values = list(values)
    if not values:
        return None
    return sum(values) / len(values)


def analyze_repository(
    root: str | Path,
    config: AnalyzerConfig | None = None,
    repo_id: str | None = None,
) -> tuple[list[ModuleMetrics], RepoCodeSummary]:
    """Measure every matching file under ``root`` and summarize.

    Files are visited in sorted relative-path order so repeated runs are
    identical. Unreadable files are skipped with a diagnostic recorded on
    the summary.
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")
    config = config or AnalyzerConfig()
    if repo_id is None:
        repo_id = root.name

    allowed = {e.lower() for e in config.extensions}
    paths = sorted(
        (p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in allowed),
        key=lambda p: p.relative_to(root).as_posix(),
    )

    modules: list[ModuleMetrics] = []
    diagnostics: list[str] = []
    skipped: list[str] = []
    for path in paths:
        label = path.relative_to(root).as_posix()
        try:
            data = path.read_bytes()
        except OSError as exc:
            skipped.append(f"{label}: {exc.strerror or exc}")
            continue
        module, module_diags = analyze_source(label, data, config)
        modules.append(module)
        diagnostics.extend(module_diags)

    all_functions = [f for m in modules for f in m.functions]
    total_sloc = sum(m.sloc for m in modules)

    def density(count: int) -> float | None:
        return count / total_sloc if total_sloc > 0 else None

    summary = RepoCodeSummary(
        repo_id=repo_id,
        file_count=len(modules),
        function_count=len(all_functions),
        total_sloc=total_sloc,
        cc=_mean(f.cyclomatic_complexity for f in all_functions),
        mi=_mean(m.maintainability_index for m in modules),
        sty=density(sum(m.style_errors for m in modules)),
        sl=density(sum(m.security.low for m in modules)),
        sm=density(sum(m.security.medium for m in modules)),
        sh=density(sum(m.security.high for m in modules)),
        diagnostics=tuple(diagnostics),
        skipped=tuple(skipped),
    )
    return modules, summary
