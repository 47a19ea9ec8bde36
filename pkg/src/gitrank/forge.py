"""Forge metadata: popularity counters and closed-ticket activity windows.

Snapshots come either from the GitHub REST API (live, token via the
GITRANK_TOKEN environment variable) or from local JSON fixtures so the whole
pipeline runs offline and deterministically. All timestamps are UTC.
"""

from __future__ import annotations

import json
import math
import os
import re
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Mapping

USER_AGENT = "gitrank/0.1"
TOKEN_ENV_VAR = "GITRANK_TOKEN"
DEFAULT_API_ROOT = "https://api.github.com"

#: Trailing activity windows, in days, anchored at evaluated_at.
WINDOW_DAYS = {"y2": 730, "y1": 365, "m6": 183, "m1": 30}

SECONDS_PER_DAY = 86400


class ForgeError(Exception):
    """Base for metadata acquisition failures."""


class UnknownRepositoryError(ForgeError):
    pass


class RateLimitedError(ForgeError):
    def __init__(self, message: str, reset_at: datetime | None = None):
        super().__init__(message)
        self.reset_at = reset_at


class PayloadError(ForgeError):
    """A response decoded, but a required field is missing or mistyped."""

    def __init__(self, field: str, detail: str):
        super().__init__(f"payload field {field!r}: {detail}")
        self.field = field


class FixtureError(ForgeError):
    pass


def parse_rfc3339(value: str) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime."""
    if not isinstance(value, str):
        raise ValueError(f"expected timestamp string, got {type(value).__name__}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise ValueError(f"invalid RFC 3339 timestamp: {value!r}") from exc
    if parsed.tzinfo is None:
        raise ValueError(f"timestamp lacks a UTC offset: {value!r}")
    return parsed.astimezone(timezone.utc)


def format_rfc3339(moment: datetime) -> str:
    return moment.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def now_utc() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


_NAME_OK = re.compile(r"[^/\s]+")


@dataclass(frozen=True)
class RepoIdentity:
    owner: str
    name: str
    created_at: datetime
    evaluated_at: datetime

    def __post_init__(self) -> None:
        for label, value in (("owner", self.owner), ("name", self.name)):
            if not isinstance(value, str) or not _NAME_OK.fullmatch(value):
                raise ValueError(f"{label} must be non-empty without '/' or spaces: {value!r}")
        for label, value in (("created_at", self.created_at), ("evaluated_at", self.evaluated_at)):
            if value.tzinfo is None:
                raise ValueError(f"{label} must be timezone-aware")
        if self.evaluated_at < self.created_at:
            raise ValueError(
                f"evaluated_at {format_rfc3339(self.evaluated_at)} precedes "
                f"created_at {format_rfc3339(self.created_at)}"
            )

    @property
    def repo_id(self) -> str:
        return f"{self.owner}/{self.name}"

    @property
    def age_days(self) -> int:
        """Whole days between creation and evaluation, floored, at least 1."""
        delta = self.evaluated_at - self.created_at
        return max(1, math.floor(delta.total_seconds() / SECONDS_PER_DAY))


@dataclass(frozen=True)
class ForgeSnapshot:
    """Raw counters as reported by the forge at evaluated_at."""

    stargazers: int
    subscribers: int
    forks: int
    total_commits: int
    closed_2y: int
    closed_1y: int
    closed_6m: int
    closed_1m: int

    def __post_init__(self) -> None:
        for label in (
            "stargazers", "subscribers", "forks", "total_commits",
            "closed_2y", "closed_1y", "closed_6m", "closed_1m",
        ):
            value = getattr(self, label)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"{label} must be a non-negative integer, got {value!r}")
        # Shorter trailing windows are subsets of longer ones.
        if not (self.closed_1m <= self.closed_6m <= self.closed_1y <= self.closed_2y):
            raise ValueError(
                "closed-ticket windows must be nested: "
                f"1m={self.closed_1m} 6m={self.closed_6m} "
                f"1y={self.closed_1y} 2y={self.closed_2y}"
            )


@dataclass(frozen=True)
class RateMeasures:
    """Per-day popularity and activity rates plus the raw window counts."""

    repo_id: str
    c2y: float
    c1y: float
    c6m: float
    c1m: float
    cm: float
    ss: float
    str: float
    fr: float


def derive_rate_measures(identity: RepoIdentity, snapshot: ForgeSnapshot) -> RateMeasures:
    """Turn raw counters into the eight table measures.

    Lifetime counters divide by repository age in whole days (floor, min 1);
    the closed-window counts pass through as-is.
    """
    age = identity.age_days
    return RateMeasures(
        repo_id=identity.repo_id,
        c2y=float(snapshot.closed_2y),
        c1y=float(snapshot.closed_1y),
        c6m=float(snapshot.closed_6m),
        c1m=float(snapshot.closed_1m),
        cm=snapshot.total_commits / age,
        ss=snapshot.stargazers / age,
        str=snapshot.subscribers / age,
        fr=snapshot.forks / age,
    )


# --------------------------------------------------------------------------
# Fixtures

_FIXTURE_INT_FIELDS = ("stargazers", "subscribers", "forks", "total_commits")
_FIXTURE_WINDOW_KEYS = ("y2", "y1", "m6", "m1")


def fixture_filename(owner: str, name: str) -> str:
    return f"{owner}__{name}.json"


def snapshot_to_fixture(identity: RepoIdentity, snapshot: ForgeSnapshot) -> dict:
    """The JSON document shape accepted by :func:`load_fixture`."""
    return {
        "owner": identity.owner,
        "name": identity.name,
        "created_at": format_rfc3339(identity.created_at),
        "evaluated_at": format_rfc3339(identity.evaluated_at),
        "stargazers": snapshot.stargazers,
        "subscribers": snapshot.subscribers,
        "forks": snapshot.forks,
        "total_commits": snapshot.total_commits,
        "closed": {
            "y2": snapshot.closed_2y,
            "y1": snapshot.closed_1y,
            "m6": snapshot.closed_6m,
            "m1": snapshot.closed_1m,
        },
    }


def load_fixture(path: str | Path) -> tuple[RepoIdentity, ForgeSnapshot]:
    """Load one repository snapshot from a fixture file.

    Every schema violation is reported with the field name and the
    constraint it broke; unknown keys are ignored so enriched documents
    (e.g. ones that also carry derived rates) stay loadable.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise FixtureError(f"{path}: cannot read fixture ({exc.strerror or exc})") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise FixtureError(f"{path}: fixture must be a JSON object")

    def fail(field: str, constraint: str) -> FixtureError:
        return FixtureError(f"{path}: field {field!r}: {constraint}")

    def get_str(field: str) -> str:
        if field not in raw:
            raise fail(field, "missing")
        value = raw[field]
        if not isinstance(value, str):
            raise fail(field, "must be a string")
        return value

    def get_int(mapping: Mapping, field: str, label: str) -> int:
        if field not in mapping:
            raise fail(label, "missing")
        value = mapping[field]
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise fail(label, "must be a non-negative integer")
        return value

    try:
        created = parse_rfc3339(get_str("created_at"))
    except ValueError as exc:
        raise fail("created_at", str(exc)) from exc
    try:
        evaluated = parse_rfc3339(get_str("evaluated_at"))
    except ValueError as exc:
        raise fail("evaluated_at", str(exc)) from exc

    try:
        identity = RepoIdentity(get_str("owner"), get_str("name"), created, evaluated)
    except ValueError as exc:
        raise FixtureError(f"{path}: {exc}") from exc

    counters = {f: get_int(raw, f, f) for f in _FIXTURE_INT_FIELDS}
    closed = raw.get("closed")
    if not isinstance(closed, dict):
        raise fail("closed", "missing or not an object")
    windows = {k: get_int(closed, k, f"closed.{k}") for k in _FIXTURE_WINDOW_KEYS}

    try:
        snapshot = ForgeSnapshot(
            stargazers=counters["stargazers"],
            subscribers=counters["subscribers"],
            forks=counters["forks"],
            total_commits=counters["total_commits"],
            closed_2y=windows["y2"],
            closed_1y=windows["y1"],
            closed_6m=windows["m6"],
            closed_1m=windows["m1"],
        )
    except ValueError as exc:
        raise FixtureError(f"{path}: {exc}") from exc
    return identity, snapshot


def load_fixture_dir(directory: str | Path, repos: list[str]) -> list[tuple[RepoIdentity, ForgeSnapshot]]:
    """Resolve ``owner/name`` ids against ``<owner>__<name>.json`` files."""
    directory = Path(directory)
    loaded = []
    for repo in repos:
        owner, _, name = repo.partition("/")
        if not owner or not name:
            raise FixtureError(f"repository id must look like owner/name: {repo!r}")
        loaded.append(load_fixture(directory / fixture_filename(owner, name)))
    return loaded


# --------------------------------------------------------------------------
# Live transport

@dataclass(frozen=True)
class TransportResponse:
    status: int
    headers: Mapping[str, str]
    body: bytes

    def json(self):
        try:
            return json.loads(self.body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise PayloadError("<body>", f"not valid JSON: {exc}") from exc

    def header(self, name: str) -> str | None:
        for key, value in self.headers.items():
            if key.lower() == name.lower():
                return value
        return None


Transport = Callable[[str, Mapping[str, str] | None], TransportResponse]


def urllib_transport(token: str | None = None, api_root: str = DEFAULT_API_ROOT) -> Transport:
    """HTTP GET against the REST API; non-2xx responses are returned, not raised."""

    def call(path: str, params: Mapping[str, str] | None = None) -> TransportResponse:
        url = api_root.rstrip("/") + path
        if params:
            url += "?" + urllib.parse.urlencode(params)
        headers = {
            "Accept": "application/vnd.github+json",
            "User-Agent": USER_AGENT,
        }
        if token:
            headers["Authorization"] = f"Bearer {token}"
        request = urllib.request.Request(url, headers=headers)
        try:
            with urllib.request.urlopen(request) as response:
                return TransportResponse(
                    response.status, dict(response.headers.items()), response.read()
                )
        except urllib.error.HTTPError as exc:
            return TransportResponse(exc.code, dict(exc.headers.items()), exc.read())
        except urllib.error.URLError as exc:
            raise ForgeError(f"network error for {url}: {exc.reason}") from exc

    return call


def _field(payload: Mapping, name: str, kind: type):
    if not isinstance(payload, Mapping) or name not in payload:
        raise PayloadError(name, "missing")
    value = payload[name]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
        raise PayloadError(name, f"expected a non-negative integer, got {value!r}")
    if kind is str and not isinstance(value, str):
        raise PayloadError(name, f"expected a string, got {type(value).__name__}")
    return value


_LINK_LAST = re.compile(r'<[^>]*[?&]page=(\d+)[^>]*>\s*;\s*rel="last"')


def _last_page(link_header: str | None) -> int | None:
    if not link_header:
        return None
    match = _LINK_LAST.search(link_header)
    return int(match.group(1)) if match else None


def _request(
    transport: Transport,
    path: str,
    params: Mapping[str, str] | None,
    sleep: Callable[[float], None],
    max_retries: int = 5,
    clock: Callable[[], float] = time.time,
) -> TransportResponse:
    """GET with retry on rate limiting (honoring reset) and server errors."""
    attempt = 0
    while True:
        response = transport(path, params)
        if 200 <= response.status < 300:
            return response
        if response.status == 404:
            raise UnknownRepositoryError(f"not found: {path}")
        if response.status in (403, 429) and response.header("x-ratelimit-remaining") == "0":
            reset_raw = response.header("x-ratelimit-reset")
            reset_at = None
            wait = 2.0 ** attempt
            if reset_raw and reset_raw.isdigit():
                reset_at = datetime.fromtimestamp(int(reset_raw), tz=timezone.utc)
                wait = max(0.0, int(reset_raw) - clock()) + 1.0
            if attempt >= max_retries:
                raise RateLimitedError(f"rate limited on {path}", reset_at=reset_at)
            sleep(wait)
            attempt += 1
            continue
        if response.status >= 500 and attempt < max_retries:
            sleep(2.0 ** attempt)
            attempt += 1
            continue
        raise ForgeError(f"HTTP {response.status} for {path}")


def _count_commits(
    transport: Transport, owner: str, name: str, sleep, max_retries: int
) -> int:
    # per_page=1 makes the last-page number equal the commit count.
    response = transport(f"/repos/{owner}/{name}/commits", {"per_page": "1"})
    if response.status == 409:  # empty repository
        return 0
    if not 200 <= response.status < 300:
        response = _request(
            transport, f"/repos/{owner}/{name}/commits", {"per_page": "1"}, sleep, max_retries
        )
    last = _last_page(response.header("link"))
    if last is not None:
        return last
    payload = response.json()
    if not isinstance(payload, list):
        raise PayloadError("commits", "expected a JSON array")
    return len(payload)


def _closed_count(
    transport: Transport,
    repo_id: str,
    evaluated_at: datetime,
    days: int,
    sleep,
    max_retries: int,
) -> int:
    since = (evaluated_at - timedelta(days=days)).date().isoformat()
    until = evaluated_at.date().isoformat()
    query = f"repo:{repo_id} is:closed closed:{since}..{until}"
    response = _request(
        transport, "/search/issues", {"q": query, "per_page": "1"}, sleep, max_retries
    )
    return _field(response.json(), "total_count", int)


def fetch_repository(
    owner: str,
    name: str,
    evaluated_at: datetime | None = None,
    token: str | None = None,
    transport: Transport | None = None,
    sleep: Callable[[float], None] = time.sleep,
    max_retries: int = 5,
) -> tuple[RepoIdentity, ForgeSnapshot]:
    """Fetch identity and counters for one repository from the forge.

    ``transport`` is injectable for tests; by default an authenticated
    urllib client is built with the token argument or GITRANK_TOKEN.
    """
    if transport is None:
        transport = urllib_transport(token or os.environ.get(TOKEN_ENV_VAR))
    if evaluated_at is None:
        evaluated_at = now_utc()

    payload = _request(transport, f"/repos/{owner}/{name}", None, sleep, max_retries).json()
    identity = RepoIdentity(
        owner=owner,
        name=name,
        created_at=parse_rfc3339(_field(payload, "created_at", str)),
        evaluated_at=evaluated_at,
    )
    closed = {
        key: _closed_count(transport, identity.repo_id, evaluated_at, days, sleep, max_retries)
        for key, days in WINDOW_DAYS.items()
    }
    snapshot = ForgeSnapshot(
        stargazers=_field(payload, "stargazers_count", int),
        subscribers=_field(payload, "subscribers_count", int),
        forks=_field(payload, "forks_count", int),
        total_commits=_count_commits(transport, owner, name, sleep, max_retries),
        closed_2y=closed["y2"],
        closed_1y=closed["y1"],
        closed_6m=closed["m6"],
        closed_1m=closed["m1"],
    )
    return identity, snapshot


def fetch_snapshot(
    identity: RepoIdentity,
    token: str | None = None,
    transport: Transport | None = None,
    sleep: Callable[[float], None] = time.sleep,
    max_retries: int = 5,
) -> ForgeSnapshot:
    """Like :func:`fetch_repository` but for a known identity (pinned clock)."""
    _, snapshot = fetch_repository(
        identity.owner,
        identity.name,
        evaluated_at=identity.evaluated_at,
        token=token,
        transport=transport,
        sleep=sleep,
        max_retries=max_retries,
    )
    return snapshot
