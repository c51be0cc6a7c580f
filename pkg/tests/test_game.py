"""Scoring table, challenge eligibility, stats bookkeeping, and empathy profiles."""

import random
from collections import Counter

import pytest

from civicmood import game
from civicmood.domain import Mood, Role, mood_catalog
from civicmood.errors import (
    DuplicateGuess,
    NoEligibleVisions,
    ScenarioNotPublished,
    SelfGuess,
    UnknownVision,
)
from civicmood.game import ScoringTable, score_guess

from conftest import add_vision, published_scenario
from oracles import confusion_oracle, scoring_oracle, total_points_oracle


class TestScoring:
    def test_all_81_pairs_match_table(self):
        awarded = []
        for actual in mood_catalog():
            for guessed in mood_catalog():
                points, correct = score_guess(actual, guessed)
                assert points == scoring_oracle(actual, guessed)
                assert correct == (actual is guessed)
                awarded.append(points)
        assert Counter(awarded) == {10: 9, 5: 8, 0: 64}

    def test_custom_table(self):
        table = ScoringTable(exact=3, quadrant=2, miss=1)
        assert score_guess(Mood.CALM, Mood.CALM, table) == (3, True)
        assert score_guess(Mood.CALM, Mood.RELAXED, table) == (2, False)
        assert score_guess(Mood.CALM, Mood.TENSE, table) == (1, False)


class TestSubmitGuess:
    def test_exact_match(self, store, policymaker, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        vision = add_vision(store, author, scenario, mood=Mood.CHEERFUL)
        result = game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.CHEERFUL)
        assert result.correct is True
        assert result.points_awarded == 10
        assert result.actual_mood is Mood.CHEERFUL
        assert result.updated_stats.total_points == 10
        assert result.updated_stats.current_streak == 1

    def test_same_grid_cell_partial_credit(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        vision = add_vision(store, author, scenario, mood=Mood.CHEERFUL)
        result = game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.EXCITED)
        assert result.correct is False
        assert result.points_awarded == 5

    def test_miss(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        vision = add_vision(store, author, scenario, mood=Mood.CHEERFUL)
        result = game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.SAD)
        assert result.correct is False
        assert result.points_awarded == 0

    def test_self_guess_rejected(self, store, citizen, scenario):
        vision = add_vision(store, citizen, scenario)
        with pytest.raises(SelfGuess):
            game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.CALM)

    def test_duplicate_rejected(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        vision = add_vision(store, author, scenario)
        game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.CALM)
        with pytest.raises(DuplicateGuess):
            game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.SAD)

    def test_unknown_vision(self, store, citizen):
        with pytest.raises(UnknownVision):
            game.submit_guess(store, citizen.user_id, "missing", Mood.CALM)

    def test_streak_resets_on_non_exact(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        moods = [Mood.CALM, Mood.CALM, Mood.TENSE]
        visions = [add_vision(store, author, scenario, mood=m, tag=f"v{i}") for i, m in enumerate(moods)]
        r1 = game.submit_guess(store, citizen.user_id, visions[0].vision_id, Mood.CALM)
        assert r1.updated_stats.current_streak == 1
        r2 = game.submit_guess(store, citizen.user_id, visions[1].vision_id, Mood.CALM)
        assert r2.updated_stats.current_streak == 2
        # partial credit does not extend a streak
        r3 = game.submit_guess(store, citizen.user_id, visions[2].vision_id, Mood.IRRITATED)
        assert r3.points_awarded == 5
        assert r3.updated_stats.current_streak == 0
        assert r3.updated_stats.exact_matches == 2
        assert r3.updated_stats.total_points == 25

    def test_streak_recurrence_random_sequences(self, store, citizen, scenario):
        rng = random.Random(99)
        author = store.users.create("author", Role.CITIZEN)
        streak = 0
        for i in range(40):
            actual = rng.choice(list(Mood))
            guessed = rng.choice(list(Mood))
            vision = add_vision(store, author, scenario, mood=actual, tag=f"r{i}")
            result = game.submit_guess(store, citizen.user_id, vision.vision_id, guessed)
            streak = streak + 1 if result.correct else 0
            assert result.updated_stats.current_streak == streak

    def test_score_conservation_after_every_mutation(self, store, citizen, scenario):
        rng = random.Random(5)
        author = store.users.create("author", Role.CITIZEN)
        for i in range(30):
            vision = add_vision(store, author, scenario, mood=rng.choice(list(Mood)), tag=f"c{i}")
            game.submit_guess(store, citizen.user_id, vision.vision_id, rng.choice(list(Mood)))
            stats = game.player_stats(store, citizen.user_id, scenario.scenario_id)
            refold = total_points_oracle(
                [g.points_awarded for g in store.guesses.list_by_player(citizen.user_id, scenario.scenario_id)]
            )
            assert stats.total_points == refold


class TestNextChallenge:
    def test_excludes_own_visions(self, store, citizen, scenario, rng):
        add_vision(store, citizen, scenario)
        with pytest.raises(NoEligibleVisions):
            game.next_challenge(store, citizen.user_id, scenario.scenario_id, rng)

    def test_exhaustion(self, store, citizen, scenario, rng):
        author = store.users.create("author", Role.CITIZEN)
        for i in range(3):
            add_vision(store, author, scenario, tag=f"e{i}")
        for _ in range(3):
            vision = game.next_challenge(store, citizen.user_id, scenario.scenario_id, rng)
            game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.NEUTRAL)
        with pytest.raises(NoEligibleVisions):
            game.next_challenge(store, citizen.user_id, scenario.scenario_id, rng)

    def test_draft_scenario_rejected(self, store, policymaker, citizen, rng):
        from civicmood import content

        draft = content.create_scenario(store, policymaker, "Draft", "", ["s"])
        with pytest.raises(ScenarioNotPublished):
            game.next_challenge(store, citizen.user_id, draft.scenario_id, rng)

    def test_challenge_view_omits_mood(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        vision = add_vision(store, author, scenario, mood=Mood.TENSE)
        payload = game.challenge_view(vision)
        assert "mood" not in payload
        assert "actual_mood" not in payload
        assert payload["vision_id"] == vision.vision_id
        assert payload["caption"] == vision.caption

    def test_selection_covers_pool(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        pool = {add_vision(store, author, scenario, tag=f"p{i}").vision_id for i in range(3)}
        rng = random.Random(42)
        seen = {
            game.next_challenge(store, citizen.user_id, scenario.scenario_id, rng).vision_id
            for _ in range(60)
        }
        assert seen == pool


class TestEmpathyProfile:
    def test_empty(self, store, citizen, scenario):
        profile = game.empathy_profile(store, citizen.user_id, scenario.scenario_id)
        assert profile.accuracy is None
        assert profile.total == 0
        assert all(cell == 0 for row in profile.cells for cell in row)

    def test_single_exact_guess(self, store, citizen, scenario):
        author = store.users.create("author", Role.CITIZEN)
        vision = add_vision(store, author, scenario, mood=Mood.CALM)
        game.submit_guess(store, citizen.user_id, vision.vision_id, Mood.CALM)
        profile = game.empathy_profile(store, citizen.user_id, scenario.scenario_id)
        calm = mood_catalog().index(Mood.CALM)
        assert profile.cells[calm][calm] == 1
        assert profile.accuracy == 1.0

    def test_mixed_log_matches_oracle(self, store, citizen, scenario):
        # Frozen from the independent confusion oracle: accuracy 2/3,
        # row sums cheerful=2 and tense=1.
        author = store.users.create("author", Role.CITIZEN)
        log = [
            (Mood.CHEERFUL, Mood.CHEERFUL),
            (Mood.CHEERFUL, Mood.SAD),
            (Mood.TENSE, Mood.TENSE),
        ]
        for i, (actual, guessed) in enumerate(log):
            vision = add_vision(store, author, scenario, mood=actual, tag=f"m{i}")
            game.submit_guess(store, citizen.user_id, vision.vision_id, guessed)
        profile = game.empathy_profile(store, citizen.user_id, scenario.scenario_id)
        expected = confusion_oracle(log)
        assert [list(row) for row in profile.cells] == expected["cells"]
        assert profile.accuracy == pytest.approx(2 / 3, abs=1e-9)
        catalog = mood_catalog()
        assert sum(profile.cells[catalog.index(Mood.CHEERFUL)]) == 2
        assert sum(profile.cells[catalog.index(Mood.TENSE)]) == 1
        stats = game.player_stats(store, citizen.user_id, scenario.scenario_id)
        assert profile.total == stats.guesses_made


def test_eligibility_safety_randomized(store, policymaker):
    """next_challenge never serves a self-authored or already-guessed vision."""
    rng = random.Random(2024)
    scenario = published_scenario(store, policymaker)
    users = [store.users.create(f"player-{i}", Role.CITIZEN) for i in range(5)]
    guessed: dict[str, set[str]] = {u.user_id: set() for u in users}
    authored: dict[str, set[str]] = {u.user_id: set() for u in users}
    vision_count = 0
    for step in range(300):
        user = rng.choice(users)
        action = rng.random()
        if action < 0.4:
            vision = add_vision(store, user, scenario, tag=f"s{step}")
            authored[user.user_id].add(vision.vision_id)
            vision_count += 1
        else:
            try:
                challenge = game.next_challenge(store, user.user_id, scenario.scenario_id, rng)
            except NoEligibleVisions:
                continue
            assert challenge.vision_id not in authored[user.user_id]
            assert challenge.vision_id not in guessed[user.user_id]
            if action < 0.9:
                game.submit_guess(store, user.user_id, challenge.vision_id, rng.choice(list(Mood)))
                guessed[user.user_id].add(challenge.vision_id)
    assert vision_count > 0
