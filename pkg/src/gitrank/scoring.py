"""Min-max normalization, component scores, and the final ranking.

Each measure column is rescaled to [0, 100] across the cohort; missing
cells stay missing through normalization and are imputed with the neutral
midpoint 50 only when a score needs them, with the imputation recorded per
repository. The maintainability weights are kept verbatim from the source
method, including their sum of 102 rather than 100.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .table import MEASURE_COLUMNS, MeasureTable

#: Weights of the maintainability aggregate, applied to normalized measures
#: and divided by 100. They sum to 102; reproduced as published.
MAINTAINABILITY_WEIGHTS = {
    "mi": 51, "c2y": 9, "c1y": 9, "c6m": 9, "c1m": 12, "cm": 12,
}

QUALITY_MEASURES = ("cc", "sty", "sl", "sm", "sh")
POPULARITY_MEASURES = ("ss", "str", "fr")

IMPUTED_VALUE = 50.0
DEGENERATE_VALUE = 50.0


def normalize_column(values: Sequence[float | None]) -> list[float | None]:
    """Min-max rescale the present values to [0, 100]; None passes through.

    A degenerate column (all present values equal) maps to the midpoint 50,
    since the cohort provides no spread to rank by.
    """
    present = [v for v in values if v is not None]
    if not present:
        return [None] * len(values)
    low = min(present)
    high = max(present)
    if high == low:
        return [None if v is None else DEGENERATE_VALUE for v in values]
    span = high - low
    return [None if v is None else (v - low) * 100.0 / span for v in values]


def quality_score(cc: float, sty: float, sl: float, sm: float, sh: float) -> float:
    """100 minus the mean of the five normalized defect measures."""
    return 100.0 - (cc + sty + sl + sm + sh) / 5.0


def maintainability_score(mi: float, c2y: float, c1y: float, c6m: float, c1m: float, cm: float) -> float:
    weights = MAINTAINABILITY_WEIGHTS
    total = (
        weights["mi"] * mi
        + weights["c2y"] * c2y
        + weights["c1y"] * c1y
        + weights["c6m"] * c6m
        + weights["c1m"] * c1m
        + weights["cm"] * cm
    )
    return total / 100.0


def popularity_score(ss: float, str_rate: float, fr: float) -> float:
    return (ss + str_rate + fr) / 3.0


def overall_score(quality: float, maintainability: float, popularity: float) -> float:
    return (quality + maintainability + popularity) / 3.0


@dataclass(frozen=True)
class ScoreCard:
    """One repository's scores; the rank is 1 for the best overall."""

    repo_id: str
    rank: int
    quality: float
    maintainability: float
    popularity: float
    overall: float
    quality_norm: float
    maintainability_norm: float
    popularity_norm: float
    overall_norm: float
    imputed: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "repo": self.repo_id,
            "rank": self.rank,
            "q": self.quality,
            "x": self.maintainability,
            "p": self.popularity,
            "s": self.overall,
            "q_norm": self.quality_norm,
            "x_norm": self.maintainability_norm,
            "p_norm": self.popularity_norm,
            "s_norm": self.overall_norm,
            "imputed": list(self.imputed),
        }


def rank(table: MeasureTable) -> list[ScoreCard]:
    """Score every repository and order best-first.

    Ties on the normalized overall score break by repository id so the
    output is a deterministic function of the table alone.
    """
    if len(table.rows) == 0:
        raise ValueError("cannot rank an empty table")

    normalized = {c: normalize_column(table.column(c)) for c in MEASURE_COLUMNS}
    count = len(table.rows)

    imputed: list[list[str]] = [[] for _ in range(count)]

    def cell(column: str, index: int) -> float:
        value = normalized[column][index]
        if value is None:
            imputed[index].append(column)
            return IMPUTED_VALUE
        return value

    qualities = []
    maintainabilities = []
    popularities = []
    overalls = []
    for i in range(count):
        q = quality_score(*(cell(c, i) for c in QUALITY_MEASURES))
        x = maintainability_score(*(cell(c, i) for c in MAINTAINABILITY_WEIGHTS))
        p = popularity_score(*(cell(c, i) for c in POPULARITY_MEASURES))
        qualities.append(q)
        maintainabilities.append(x)
        popularities.append(p)
        overalls.append(overall_score(q, x, p))

    q_norm = normalize_column(qualities)
    x_norm = normalize_column(maintainabilities)
    p_norm = normalize_column(popularities)
    s_norm = normalize_column(overalls)

    order = sorted(range(count), key=lambda i: (-s_norm[i], table.rows[i].repo_id))
    cards = []
    for position, i in enumerate(order, start=1):
        cards.append(
            ScoreCard(
                repo_id=table.rows[i].repo_id,
                rank=position,
                quality=qualities[i],
                maintainability=maintainabilities[i],
                popularity=popularities[i],
                overall=overalls[i],
                quality_norm=q_norm[i],
                maintainability_norm=x_norm[i],
                popularity_norm=p_norm[i],
                overall_norm=s_norm[i],
                imputed=tuple(imputed[i]),
            )
        )
    return cards


RANKING_HEADER = ("rank", "repo", "s_norm", "q_norm", "x_norm", "p_norm", "q", "x", "p", "s")


def ranking_csv_lines(cards: Iterable[ScoreCard]) -> list[str]:
    """Rows of the delimited report; floats fixed to four decimals."""
    lines = [",".join(RANKING_HEADER)]
    for card in cards:
        lines.append(
            ",".join(
                [
                    str(card.rank),
                    card.repo_id,
                    f"{card.overall_norm:.4f}",
                    f"{card.quality_norm:.4f}",
                    f"{card.maintainability_norm:.4f}",
                    f"{card.popularity_norm:.4f}",
                    f"{card.quality:.4f}",
                    f"{card.maintainability:.4f}",
                    f"{card.popularity:.4f}",
                    f"{card.overall:.4f}",
                ]
            )
        )
    return lines


def ranking_document(cards: Sequence[ScoreCard]) -> dict:
    """JSON mirror of the ranking, including the scoring constants used."""
    return {
        "weights": {
            "maintainability": dict(MAINTAINABILITY_WEIGHTS),
            "maintainability_weight_sum": sum(MAINTAINABILITY_WEIGHTS.values()),
            "imputed_value": IMPUTED_VALUE,
        },
        "ranking": [card.as_dict() for card in cards],
    }


def save_ranking(cards: Sequence[ScoreCard], csv_path: str | Path, json_path: str | Path | None = None) -> None:
    csv_path = Path(csv_path)
    csv_path.write_text("\n".join(ranking_csv_lines(cards)) + "\n",
                        encoding="utf-8", newline="\n")
    if json_path is not None:
        Path(json_path).write_text(
            json.dumps(ranking_document(cards), indent=2) + "\n",
            encoding="utf-8", newline="\n",
        )


def split_halves(cards: Sequence[ScoreCard]) -> tuple[list[str], list[str]]:
    """Partition ranked ids into top and bottom halves (odd count favors top)."""
    ordered = sorted(cards, key=lambda c: c.rank)
    cut = math.ceil(len(ordered) / 2)
    ids = [c.repo_id for c in ordered]
    return ids[:cut], ids[cut:]
