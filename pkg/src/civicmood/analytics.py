"""Scenario reports for policymakers: survey, mood, and participation aggregates.

Reports are computed on demand from a single consistent snapshot and never
mutate stored data. They expose aggregates only, never respondent identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Any

from .domain import Mood, Role, Scenario, mood_catalog, rfc3339
from .errors import Forbidden
from .storage import Store
from .survey import LikertSummary, get_scenario, summarize_counts


@dataclass(frozen=True)
class MoodSlice:
    count: int
    fraction: float

    def to_dict(self) -> dict[str, Any]:
        return {"count": self.count, "fraction": self.fraction}


@dataclass(frozen=True)
class ScenarioReport:
    scenario_id: str
    generated_at: datetime
    likert: tuple[LikertSummary, ...]
    mood_distribution: dict[Mood, MoodSlice]
    vision_count: int
    response_count: int
    distinct_participants: int
    overall_guess_accuracy: float | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario_id": self.scenario_id,
            "generated_at": rfc3339(self.generated_at),
            "likert": [summary.to_dict() for summary in self.likert],
            "mood_distribution": {
                mood.value: slice_.to_dict() for mood, slice_ in self.mood_distribution.items()
            },
            "vision_count": self.vision_count,
            "response_count": self.response_count,
            "distinct_participants": self.distinct_participants,
            "overall_guess_accuracy": self.overall_guess_accuracy,
        }


def scenario_report(store: Store, scenario_id: str, actor_role: Role) -> ScenarioReport:
    """Build the full report; policymaker-only.

    ``generated_at`` is the timestamp of the latest recorded activity rather
    than the wall clock, so the report is a pure function of stored data.
    """
    if actor_role is not Role.POLICYMAKER:
        raise Forbidden("scenario reports are available to policymakers only")
    scenario = get_scenario(store, scenario_id)

    def snapshot(txn: Store) -> ScenarioReport:
        likert = tuple(
            summarize_counts(statement_id, txn.responses.level_counts(statement_id))
            for statement_id in scenario.statement_ids()
        )
        mood_counts = txn.visions.mood_counts(scenario_id)
        vision_count = sum(mood_counts.values())
        distribution = {
            mood: MoodSlice(
                count=mood_counts[mood],
                fraction=mood_counts[mood] / vision_count if vision_count else 0.0,
            )
            for mood in mood_catalog()
        }
        response_count = txn.responses.count_for_scenario(scenario_id)
        participants = (
            txn.responses.distinct_users(scenario_id)
            | txn.visions.distinct_authors(scenario_id)
            | txn.guesses.distinct_guessers(scenario_id)
        )
        exact, total = txn.guesses.accuracy_counts(scenario_id)
        accuracy = exact / total if total else None
        return ScenarioReport(
            scenario_id=scenario_id,
            generated_at=_latest_activity(txn, scenario),
            likert=likert,
            mood_distribution=distribution,
            vision_count=vision_count,
            response_count=response_count,
            distinct_participants=len(participants),
            overall_guess_accuracy=accuracy,
        )

    return store.atomically(snapshot)


def _latest_activity(store: Store, scenario: Scenario) -> datetime:
    stamps = [scenario.created_at]
    if scenario.published_at:
        stamps.append(scenario.published_at)
    for latest in (
        store.responses.latest_activity(scenario.scenario_id),
        store.visions.latest_activity(scenario.scenario_id),
        store.guesses.latest_activity(scenario.scenario_id),
    ):
        if latest is not None:
            stamps.append(latest)
    return max(stamps)
