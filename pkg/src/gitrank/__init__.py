"""Repository quality ranking toolkit.

Static C-family code measures, forge metadata rates, min-max scoring of a
repository cohort, and consensus confidence for mined-pattern datasets.
"""

from .analyzer import (
    AnalyzerConfig,
    ModuleMetrics,
    RepoCodeSummary,
    analyze_repository,
    analyze_source,
    load_analyzer_config,
)
from .forge import (
    FixtureError,
    ForgeError,
    ForgeSnapshot,
    PayloadError,
    RateLimitedError,
    RateMeasures,
    RepoIdentity,
    UnknownRepositoryError,
    derive_rate_measures,
    fetch_repository,
    fetch_snapshot,
    load_fixture,
)
from .functions import FunctionSpan, extract_functions
from .lexer import Diagnostic, LexResult, Token, TokenKind, lex, tokenize
from .metrics import (
    FunctionMetrics,
    HalsteadCounts,
    count_sloc,
    cyclomatic_complexity,
    halstead_counts,
    halstead_volume,
    maintainability_index,
    measure_function,
)
from .patterns import (
    ConfidenceReport,
    GraphFormatError,
    PatternGraph,
    PatternTuple,
    confidence,
    confidence_report,
    degree_confidence,
    load_pattern_graph,
    stdev_confidence,
    tuple_summary,
)
from .scoring import (
    ScoreCard,
    maintainability_score,
    normalize_column,
    overall_score,
    popularity_score,
    quality_score,
    rank,
    split_halves,
)
from .security import (
    DEFAULT_SECURITY_RULES,
    SecurityCounts,
    SecurityRule,
    load_security_rules,
    security_errors,
)
from .style import StyleViolation, style_errors, style_violations
from .table import (
    MEASURE_COLUMNS,
    MeasureTable,
    RepoMeasures,
    TableFormatError,
    build_row,
    load_table,
    load_table_json,
    save_table,
    save_table_json,
)

__version__ = "0.1.0"
