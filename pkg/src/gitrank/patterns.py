"""Consensus confidence for mined-pattern datasets.

The data is a bipartite graph: K repositories contribute occurrences of J
patterns. Confidence rewards patterns found in many repositories (degree
term) and penalizes contribution counts that vary wildly across the cohort
(spread term): c = c_degree + (1 - c_stdev).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping


class GraphFormatError(ValueError):
    """Malformed edge-list input; message includes the offending line."""


@dataclass(frozen=True)
class PatternTuple:
    """Aggregate for one pattern: n total occurrences across d repositories."""

    pattern: str
    n: int
    d: int


@dataclass(frozen=True)
class PatternGraph:
    repositories: tuple[str, ...]
    patterns: tuple[str, ...]
    contributions: Mapping[tuple[str, str], int]

    def __post_init__(self) -> None:
        if not self.repositories:
            raise ValueError("graph needs at least one repository")
        if not self.patterns:
            raise ValueError("graph needs at least one pattern")
        repos = set(self.repositories)
        patterns = set(self.patterns)
        if len(repos) != len(self.repositories):
            raise ValueError("duplicate repository ids")
        if len(patterns) != len(self.patterns):
            raise ValueError("duplicate pattern ids")
        touched_repos = set()
        touched_patterns = set()
        for (repo, pattern), weight in self.contributions.items():
            if repo not in repos:
                raise ValueError(f"edge references unknown repository {repo!r}")
            if pattern not in patterns:
                raise ValueError(f"edge references unknown pattern {pattern!r}")
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                raise ValueError(f"edge {repo!r}->{pattern!r} must have weight >= 1")
            touched_repos.add(repo)
            touched_patterns.add(pattern)
        # Isolated vertices are meaningless here: a repository that mined
        # nothing or a pattern nobody exhibits would silently dilute the
        # averages, so they are rejected up front.
        if touched_repos != repos:
            missing = sorted(repos - touched_repos)
            raise ValueError(f"repositories with no edges: {', '.join(missing)}")
        if touched_patterns != patterns:
            missing = sorted(patterns - touched_patterns)
            raise ValueError(f"patterns with no edges: {', '.join(missing)}")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, int]]) -> "PatternGraph":
        contributions: dict[tuple[str, str], int] = {}
        for repo, pattern, weight in edges:
            key = (repo, pattern)
            if key in contributions:
                raise ValueError(f"duplicate edge {repo!r}->{pattern!r}")
            contributions[key] = weight
        repositories = tuple(sorted({r for r, _ in contributions}))
        patterns = tuple(sorted({p for _, p in contributions}))
        return cls(repositories, patterns, contributions)

    def contribution(self, repo: str, pattern: str) -> int:
        """Occurrences of ``pattern`` mined from ``repo``; 0 when absent."""
        return self.contributions.get((repo, pattern), 0)

    def indegree(self, pattern: str) -> int:
        return sum(1 for r in self.repositories if (r, pattern) in self.contributions)


def load_pattern_graph(path: str | Path) -> PatternGraph:
    """Parse the edge-list format.

    First significant line is ``K J``; each following line is
    ``repo_id pattern_id count``. ``#`` starts a comment; ids carry no
    whitespace. The header must agree with the ids actually referenced.
    """
    path = Path(path)
    header: tuple[int, int] | None = None
    edges: list[tuple[str, str, int]] = []
    edge_lines: dict[tuple[str, str], int] = {}
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(f"{path}: line {number}: header must be 'K J'")
            try:
                k, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"{path}: line {number}: header must be two integers") from None
            if k < 1 or j < 1:
                raise GraphFormatError(f"{path}: line {number}: K and J must be >= 1")
            header = (k, j)
            continue
        if len(parts) != 3:
            raise GraphFormatError(
                f"{path}: line {number}: expected 'repo_id pattern_id count'"
            )
        repo, pattern, weight_text = parts
        try:
            weight = int(weight_text)
        except ValueError:
            raise GraphFormatError(f"{path}: line {number}: count must be an integer") from None
        if weight < 1:
            raise GraphFormatError(f"{path}: line {number}: count must be >= 1")
        key = (repo, pattern)
        if key in edge_lines:
            raise GraphFormatError(
                f"{path}: line {number}: duplicate edge {repo} {pattern} "
                f"(first on line {edge_lines[key]})"
            )
        edge_lines[key] = number
        edges.append((repo, pattern, weight))

    if header is None:
        raise GraphFormatError(f"{path}: missing 'K J' header line")
    if not edges:
        raise GraphFormatError(f"{path}: no edges")
    try:
        graph = PatternGraph.from_edges(edges)
    except ValueError as exc:
        raise GraphFormatError(f"{path}: {exc}") from exc
    k, j = header
    if len(graph.repositories) != k:
        raise GraphFormatError(
            f"{path}: header declares {k} repositories, edges reference {len(graph.repositories)}"
        )
    if len(graph.patterns) != j:
        raise GraphFormatError(
            f"{path}: header declares {j} patterns, edges reference {len(graph.patterns)}"
        )
    return graph


def degree_confidence(graph: PatternGraph) -> float:
    """Mean over patterns of (supporting repositories / K); in (0, 1]."""
    k = len(graph.repositories)
    return sum(graph.indegree(p) / k for p in graph.patterns) / len(graph.patterns)


def stdev_confidence(graph: PatternGraph) -> float:
    """Mean over patterns of the population stdev of contribution counts.

    Each pattern's spread is taken over exactly K values, one per
    repository, with 0 for repositories that don't exhibit the pattern.
    """
    k = len(graph.repositories)
    total = 0.0
    for pattern in graph.patterns:
        values = [graph.contribution(r, pattern) for r in graph.repositories]
        mean = sum(values) / k
        variance = sum((v - mean) ** 2 for v in values) / k
        total += math.sqrt(variance)
    return total / len(graph.patterns)


def combine_confidence(c_degree: float, c_stdev: float) -> float:
    return c_degree + (1.0 - c_stdev)


def confidence(graph: PatternGraph) -> float:
    return combine_confidence(degree_confidence(graph), stdev_confidence(graph))


def tuple_summary(graph: PatternGraph) -> list[PatternTuple]:
    """Per-pattern (n, d) aggregates, ordered by pattern id."""
    result = []
    for pattern in graph.patterns:
        total = sum(graph.contribution(r, pattern) for r in graph.repositories)
        result.append(PatternTuple(pattern, total, graph.indegree(pattern)))
    return result


def _pattern_sigma(graph: PatternGraph, pattern: str) -> float:
    k = len(graph.repositories)
    values = [graph.contribution(r, pattern) for r in graph.repositories]
    mean = sum(values) / k
    return math.sqrt(sum((v - mean) ** 2 for v in values) / k)


@dataclass(frozen=True)
class ConfidenceReport:
    c_degree: float
    c_stdev: float
    c: float
    #: (pattern id, indegree, contribution stdev), ordered by pattern id.
    per_pattern: tuple[tuple[str, int, float], ...]


def confidence_report(graph: PatternGraph) -> ConfidenceReport:
    c_degree = degree_confidence(graph)
    c_stdev = stdev_confidence(graph)
    return ConfidenceReport(
        c_degree=c_degree,
        c_stdev=c_stdev,
        c=combine_confidence(c_degree, c_stdev),
        per_pattern=tuple(
            (p, graph.indegree(p), _pattern_sigma(graph, p)) for p in graph.patterns
        ),
    )


def confidence_document(graph: PatternGraph) -> dict:
    """The JSON report shape: the three metrics plus per-pattern rows."""
    report = confidence_report(graph)
    totals = {t.pattern: t.n for t in tuple_summary(graph)}
    return {
        "c_degree": report.c_degree,
        "c_stdev": report.c_stdev,
        "c": report.c,
        "patterns": [
            {"id": pattern, "indegree": indegree, "sigma": sigma,
             "n": totals[pattern], "d": indegree}
            for pattern, indegree, sigma in report.per_pattern
        ],
    }


def save_confidence(graph: PatternGraph, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(confidence_document(graph), indent=2) + "\n",
        encoding="utf-8", newline="\n",
    )
