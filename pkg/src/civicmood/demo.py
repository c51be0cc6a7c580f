"""Demo dataset: a published scenario on new conference formats."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import content, game, survey
from .domain import Mood, Role, ScenarioStatus
from .images import ImageSearchQuery, StubImageProvider
from .storage import Store

_STATEMENTS = [
    "Online-only conferences make attending easier for me than onsite ones.",
    "Hybrid formats give remote attendees a real seat at the table.",
    "Virtual venues are a good place for the social side of a conference.",
    "I would accept fewer live talks in exchange for better recordings.",
]

_VISIONS = [
    ("quiet home office with two screens", "Attending from my desk means I actually make it to the early sessions.", Mood.CALM),
    ("crowded poster hall", "Hallway conversations are the part no stream has ever captured.", Mood.CHEERFUL),
    ("empty airport gate at dawn", "Two days of travel for a twenty-minute talk wears me down.", Mood.BORED),
    ("laptop with a frozen video call", "Hybrid Q&A where the room forgets the remote mic exists.", Mood.IRRITATED),
    ("pixel-art lounge with avatars", "Bumped into an old colleague in a virtual lounge. It almost felt real.", Mood.EXCITED),
]


@dataclass(frozen=True)
class DemoSummary:
    scenario_id: str
    title: str
    users: int
    responses: int
    visions: int
    guesses: int


def seed_demo_data(store: Store, seed: int = 11) -> DemoSummary:
    """Create one published scenario plus a handful of active participants."""
    rng = random.Random(seed)
    organizer = store.users.create("demo-organizer", Role.POLICYMAKER)
    scenario = content.create_scenario(
        store,
        organizer,
        title="New conference formats",
        description=(
            "Online, onsite, or hybrid: how should the next generation of "
            "conferences run? Share how the options make you feel."
        ),
        statement_texts=_STATEMENTS,
    )
    scenario = content.change_scenario_status(
        store, organizer.user_id, scenario.scenario_id, ScenarioStatus.PUBLISHED
    )

    citizens = [store.users.create(f"demo-citizen-{i}", Role.CITIZEN) for i in range(1, 6)]
    stub_images = StubImageProvider()
    responses = 0
    for citizen in citizens:
        answers = {sid: rng.randint(1, 5) for sid in scenario.statement_ids()}
        survey.submit_response(store, citizen.user_id, scenario.scenario_id, answers)
        responses += 1

    visions = []
    for citizen, (keywords, caption, mood) in zip(citizens, _VISIONS):
        image = stub_images.search(ImageSearchQuery(keywords=keywords, per_page=1)).results[0]
        visions.append(
            content.create_vision(
                store, citizen.user_id, scenario.scenario_id, image, caption, mood
            )
        )

    guesses = 0
    for citizen in citizens:
        for _ in range(rng.randint(1, 3)):
            try:
                challenge = game.next_challenge(store, citizen.user_id, scenario.scenario_id, rng)
            except Exception:
                break
            guessed = rng.choice(list(Mood))
            game.submit_guess(store, citizen.user_id, challenge.vision_id, guessed)
            guesses += 1

    return DemoSummary(
        scenario_id=scenario.scenario_id,
        title=scenario.title,
        users=1 + len(citizens),
        responses=responses,
        visions=len(visions),
        guesses=guesses,
    )
