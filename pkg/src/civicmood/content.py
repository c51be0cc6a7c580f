"""Scenario authoring and vision creation on top of the store."""

from __future__ import annotations

from typing import Sequence

from .domain import (
    ImageRef,
    Mood,
    Role,
    Scenario,
    ScenarioStatus,
    UserAccount,
    Vision,
    transition_scenario,
)
from .errors import Forbidden, ScenarioNotPublished
from .storage import Page, Store
from .survey import get_scenario


def create_scenario(
    store: Store,
    owner: UserAccount,
    title: str,
    description: str = "",
    statement_texts: Sequence[str] = (),
) -> Scenario:
    """Create a draft scenario with its ordered pre-survey statements."""
    if owner.role is not Role.POLICYMAKER:
        raise Forbidden("only policymakers create scenarios")
    return store.scenarios.create(owner.user_id, title, description, statement_texts)


def change_scenario_status(
    store: Store, actor_id: str, scenario_id: str, target: ScenarioStatus
) -> Scenario:
    scenario = get_scenario(store, scenario_id)
    updated = transition_scenario(scenario, target, actor_id)
    return store.scenarios.set_status(updated)


def create_vision(
    store: Store, author_id: str, scenario_id: str, image: ImageRef, caption: str, mood: Mood
) -> Vision:
    """Attach a new vision to a published scenario."""
    scenario = get_scenario(store, scenario_id)
    if scenario.status is not ScenarioStatus.PUBLISHED:
        raise ScenarioNotPublished(
            "visions can only be added to published scenarios",
            scenario_id=scenario_id,
            status=scenario.status.value,
        )
    return store.visions.create(scenario_id, author_id, image, caption, mood)


def vision_feed(store: Store, scenario_id: str, page: int = 1, page_size: int = 20) -> Page:
    """Newest-first page of the scenario's public vision feed."""
    get_scenario(store, scenario_id)  # 404 before paginating
    return store.visions.paginate(scenario_id, page=page, page_size=page_size)


def list_scenarios(store: Store, status: ScenarioStatus | None = None) -> list[Scenario]:
    return store.scenarios.list(status=status)
