"""Command-line front end: analyze, fetch, rank, confidence.

Exit codes are a stable contract: 0 success, 1 fatal error, 2 partial
results (files skipped, or nothing analyzable). All output is plain
tabular/JSON text, so NO_COLOR needs no special handling.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime
from pathlib import Path

from .analyzer import AnalyzerConfig, analyze_repository, load_analyzer_config
from .forge import (
    ForgeError,
    derive_rate_measures,
    fetch_repository,
    fixture_filename,
    load_fixture,
    parse_rfc3339,
    snapshot_to_fixture,
    RepoIdentity,
)
from .patterns import GraphFormatError, confidence_document, load_pattern_graph
from .scoring import rank, ranking_csv_lines, ranking_document, split_halves
from .security import RuleFormatError
from .table import MeasureTable, TableFormatError, build_row, load_table

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2


class _Parser(argparse.ArgumentParser):
    # Usage mistakes are fatal errors (exit 1); argparse's default 2 would
    # collide with the partial-results code.
    def error(self, message):
        self.exit(EXIT_FATAL, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--config", type=Path, help="analyzer config JSON")
    common.add_argument("--fixtures", type=Path, metavar="DIR",
                        help="directory of offline metadata fixtures and code trees")
    common.add_argument("--evaluated-at", metavar="RFC3339",
                        help="pin the evaluation instant (default: fixture value or now)")

    parser = _Parser(prog="gitrank", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", metavar="command")

    analyze = commands.add_parser("analyze", parents=[common],
                                  help="measure one local source tree")
    analyze.add_argument("path", type=Path)
    analyze.set_defaults(func=cmd_analyze)

    fetch = commands.add_parser("fetch", parents=[common],
                                help="load or download repository metadata")
    fetch.add_argument("repo", help="owner/name")
    fetch.add_argument("--live", action="store_true",
                       help="permit network access to the forge API")
    fetch.set_defaults(func=cmd_fetch)

    rank_cmd = commands.add_parser("rank", parents=[common],
                                   help="score and rank a cohort")
    rank_cmd.add_argument("table", nargs="?", type=Path,
                          help="measure-table CSV (omit when using --repos)")
    rank_cmd.add_argument("--repos", type=Path, metavar="FILE",
                          help="file with one owner/name per line; built via --fixtures")
    rank_cmd.add_argument("--split-halves", action="store_true",
                          help="also write top/bottom half repository lists")
    rank_cmd.set_defaults(func=cmd_rank)

    confidence = commands.add_parser("confidence", parents=[common],
                                     help="consensus confidence of a pattern dataset")
    confidence.add_argument("edges", type=Path, help="edge-list file")
    confidence.set_defaults(func=cmd_confidence)
    return parser


def _fail(message: str) -> int:
    print(f"gitrank: error: {message}", file=sys.stderr)
    return EXIT_FATAL


def _write_json(document: dict, out: Path | None) -> None:
    text = json.dumps(document, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def _analyzer_config(args) -> AnalyzerConfig:
    if args.config is not None:
        return load_analyzer_config(args.config)
    return AnalyzerConfig()


def _evaluated_override(args) -> datetime | None:
    if args.evaluated_at is None:
        return None
    return parse_rfc3339(args.evaluated_at)


def cmd_analyze(args) -> int:
    if not args.path.is_dir():
        return _fail(f"not a directory: {args.path}")
    config = _analyzer_config(args)
    modules, summary = analyze_repository(args.path, config)
    document = {
        "repo": summary.repo_id,
        "summary": {
            "file_count": summary.file_count,
            "function_count": summary.function_count,
            "total_sloc": summary.total_sloc,
            "measures": {
                "cc": summary.cc,
                "sty": summary.sty,
                "sl": summary.sl,
                "sm": summary.sm,
                "sh": summary.sh,
                "mi": summary.mi,
            },
        },
        "files": [m.to_dict() for m in modules],
        "diagnostics": list(summary.diagnostics),
        "skipped": list(summary.skipped),
    }
    _write_json(document, args.out)
    if summary.file_count == 0 or summary.skipped:
        return EXIT_PARTIAL
    return EXIT_OK


def _split_repo(value: str) -> tuple[str, str]:
    owner, _, name = value.partition("/")
    if not owner or not name or "/" in name:
        raise ValueError(f"repository id must look like owner/name: {value!r}")
    return owner, name


def cmd_fetch(args) -> int:
    owner, name = _split_repo(args.repo)
    override = _evaluated_override(args)
    if args.fixtures is not None:
        identity, snapshot = load_fixture(args.fixtures / fixture_filename(owner, name))
        if override is not None:
            identity = RepoIdentity(identity.owner, identity.name,
                                    identity.created_at, override)
    elif args.live:
        identity, snapshot = fetch_repository(owner, name, evaluated_at=override)
    else:
        return _fail("fetch needs --fixtures DIR or --live (network access is opt-in)")
    rates = derive_rate_measures(identity, snapshot)
    document = snapshot_to_fixture(identity, snapshot)
    document["rates"] = {
        "age_days": identity.age_days,
        "c2y": rates.c2y, "c1y": rates.c1y, "c6m": rates.c6m, "c1m": rates.c1m,
        "cm": rates.cm, "ss": rates.ss, "str": rates.str, "fr": rates.fr,
    }
    _write_json(document, args.out)
    return EXIT_OK


def _table_from_repos(args) -> MeasureTable:
    if args.fixtures is None:
        raise ValueError("--repos needs --fixtures DIR for metadata and code trees")
    repos = [
        line.strip()
        for line in args.repos.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not repos:
        raise ValueError(f"{args.repos}: no repository ids")
    config = _analyzer_config(args)
    override = _evaluated_override(args)
    rows = []
    for repo in repos:
        owner, name = _split_repo(repo)
        identity, snapshot = load_fixture(args.fixtures / fixture_filename(owner, name))
        if override is not None:
            identity = RepoIdentity(identity.owner, identity.name,
                                    identity.created_at, override)
        tree = args.fixtures / f"{owner}__{name}"
        if not tree.is_dir():
            raise ValueError(f"missing code tree for {repo}: {tree}")
        _, summary = analyze_repository(tree, config, repo_id=identity.repo_id)
        rows.append(build_row(summary, derive_rate_measures(identity, snapshot)))
    return MeasureTable.from_rows(rows)


def cmd_rank(args) -> int:
    if (args.table is None) == (args.repos is None):
        return _fail("rank needs exactly one input: a table CSV or --repos FILE")
    if args.table is not None:
        table = load_table(args.table)
    else:
        table = _table_from_repos(args)
    if len(table) == 0:
        return _fail("measure table has no rows")
    cards = rank(table)
    csv_text = "\n".join(ranking_csv_lines(cards)) + "\n"
    if args.out is None:
        if args.split_halves:
            return _fail("--split-halves needs --out to name the list files")
        sys.stdout.write(csv_text)
        return EXIT_OK
    # newline pinned so golden files stay byte-identical across platforms
    args.out.write_text(csv_text, encoding="utf-8", newline="\n")
    json_path = args.out.with_suffix(".json")
    json_path.write_text(json.dumps(ranking_document(cards), indent=2) + "\n",
                         encoding="utf-8", newline="\n")
    if args.split_halves:
        top, bottom = split_halves(cards)
        args.out.with_suffix(".top.txt").write_text(
            "".join(f"{r}\n" for r in top), encoding="utf-8", newline="\n")
        args.out.with_suffix(".bottom.txt").write_text(
            "".join(f"{r}\n" for r in bottom), encoding="utf-8", newline="\n")
    return EXIT_OK


def cmd_confidence(args) -> int:
    graph = load_pattern_graph(args.edges)
    _write_json(confidence_document(graph), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_FATAL
    try:
        return args.func(args)
    except (ForgeError, TableFormatError, GraphFormatError, RuleFormatError) as exc:
        return _fail(str(exc))
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
