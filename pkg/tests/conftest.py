import random

import pytest

from civicmood import content
from civicmood.domain import ImageRef, Mood, Role, ScenarioStatus
from civicmood.storage import Store, open_store


@pytest.fixture
def store() -> Store:
    s = open_store("embedded:")
    yield s
    s.close()


@pytest.fixture
def policymaker(store):
    return store.users.create("maker", Role.POLICYMAKER)


@pytest.fixture
def citizen(store):
    return store.users.create("citizen-1", Role.CITIZEN)


def make_image(tag: str = "img") -> ImageRef:
    return ImageRef(
        source_url=f"https://images.test/{tag}.jpg",
        thumbnail_url=f"https://images.test/{tag}-thumb.jpg",
        attribution="Test Author / Test Provider",
        provider_id=f"prov-{tag}",
    )


def published_scenario(store, owner, statement_texts=("Statement one.", "Statement two.", "Statement three.")):
    scenario = content.create_scenario(
        store, owner, title="Test scenario", description="", statement_texts=list(statement_texts)
    )
    return content.change_scenario_status(
        store, owner.user_id, scenario.scenario_id, ScenarioStatus.PUBLISHED
    )


def add_vision(store, author, scenario, mood=Mood.CALM, caption="a caption", tag="img"):
    return content.create_vision(
        store, author.user_id, scenario.scenario_id, make_image(tag), caption, mood
    )


@pytest.fixture
def scenario(store, policymaker):
    return published_scenario(store, policymaker)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)
