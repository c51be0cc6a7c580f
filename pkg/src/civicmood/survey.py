"""Pre-survey engine: collect complete Likert responses and aggregate them.

A response must answer every statement of its scenario exactly once, and each
participant submits at most once per scenario (the response captures a
starting opinion, so re-takes are rejected).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .domain import SurveyResponse, Scenario, ScenarioStatus
from .errors import (
    ConflictOnUnique,
    DuplicateResponse,
    IncompleteAnswers,
    LevelOutOfRange,
    NotFound,
    ScenarioNotPublished,
    UnknownScenario,
    UnknownStatement,
)
from .storage import Store

LEVEL_MIN = 1
LEVEL_MAX = 5


@dataclass(frozen=True)
class LikertSummary:
    """Per-statement aggregate; counts[i] is the tally for level i+1."""

    statement_id: str
    counts: tuple[int, int, int, int, int]
    n: int
    mean: float | None
    median: float | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "statement_id": self.statement_id,
            "counts": list(self.counts),
            "n": self.n,
            "mean": self.mean,
            "median": self.median,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LikertSummary":
        return cls(
            statement_id=data["statement_id"],
            counts=tuple(data["counts"]),
            n=int(data["n"]),
            mean=data["mean"],
            median=data["median"],
        )


def get_scenario(store: Store, scenario_id: str) -> Scenario:
    try:
        return store.scenarios.get(scenario_id)
    except NotFound:
        raise UnknownScenario(f"no scenario {scenario_id}", scenario_id=scenario_id) from None


def submit_response(
    store: Store, user_id: str, scenario_id: str, answers: Mapping[str, int]
) -> SurveyResponse:
    """Persist one complete survey response atomically.

    Raises ScenarioNotPublished, IncompleteAnswers (missing or extra
    statement ids), LevelOutOfRange, or DuplicateResponse.
    """
    scenario = get_scenario(store, scenario_id)
    if scenario.status is not ScenarioStatus.PUBLISHED:
        raise ScenarioNotPublished(
            "survey responses are only accepted while the scenario is published",
            scenario_id=scenario_id,
            status=scenario.status.value,
        )
    expected = set(scenario.statement_ids())
    got = set(answers)
    if got != expected:
        raise IncompleteAnswers(
            "every statement must be answered exactly once",
            missing=sorted(expected - got),
            extra=sorted(got - expected),
        )
    for statement_id, level in answers.items():
        if not isinstance(level, int) or isinstance(level, bool) or not LEVEL_MIN <= level <= LEVEL_MAX:
            raise LevelOutOfRange(
                f"levels must be integers {LEVEL_MIN}-{LEVEL_MAX}",
                statement_id=statement_id,
                level=level,
            )

    def work(txn: Store) -> SurveyResponse:
        if txn.responses.exists(scenario_id, user_id):
            raise DuplicateResponse(
                "this participant already responded to the scenario",
                scenario_id=scenario_id,
                user_id=user_id,
            )
        return txn.responses.create(scenario_id, user_id, dict(answers))

    try:
        return store.atomically(work)
    except ConflictOnUnique:
        # Backstop for concurrent duplicates racing past the exists() check.
        raise DuplicateResponse(
            "this participant already responded to the scenario",
            scenario_id=scenario_id,
            user_id=user_id,
        ) from None


def summarize_counts(statement_id: str, counts: list[int]) -> LikertSummary:
    """Build a summary from a level histogram; mean/median are None when n=0."""
    n = sum(counts)
    if n == 0:
        return LikertSummary(statement_id, tuple(counts), 0, None, None)
    mean = sum(level * count for level, count in zip(range(1, 6), counts)) / n
    return LikertSummary(statement_id, tuple(counts), n, mean, _median_from_counts(counts, n))


def _median_from_counts(counts: list[int], n: int) -> float:
    # Median of the level multiset; even n averages the two middle levels.
    def level_at(k: int) -> int:
        cumulative = 0
        for level, count in zip(range(1, 6), counts):
            cumulative += count
            if cumulative >= k:
                return level
        raise AssertionError("rank beyond histogram")

    if n % 2 == 1:
        return float(level_at(n // 2 + 1))
    return (level_at(n // 2) + level_at(n // 2 + 1)) / 2


def aggregate_statement(store: Store, scenario_id: str, statement_id: str) -> LikertSummary:
    """Aggregate all stored responses for one statement of a scenario."""
    scenario = get_scenario(store, scenario_id)
    if statement_id not in scenario.statement_ids():
        raise UnknownStatement(
            "statement does not belong to this scenario",
            scenario_id=scenario_id,
            statement_id=statement_id,
        )
    counts = store.responses.level_counts(statement_id)
    return summarize_counts(statement_id, counts)
