"""Mood-guessing game: challenge selection, scoring, and player statistics.

Scoring gives full points for an exact mood match, partial credit when the
guess lands in the same valence/arousal cell, and nothing otherwise. One guess
per (player, vision), no retries, and players never see their own visions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Any

from .domain import Mood, PlayerStats, ScenarioStatus, Vision, mood_catalog, rfc3339
from .errors import (
    ConflictOnUnique,
    DuplicateGuess,
    NoEligibleVisions,
    NotFound,
    ScenarioNotPublished,
    SelfGuess,
    UnknownVision,
)
from .storage import Store
from .survey import get_scenario

_module_rng = random.Random()


@dataclass(frozen=True)
class ScoringTable:
    """Points for exact match / same grid cell / miss; config-overridable."""

    exact: int = 10
    quadrant: int = 5
    miss: int = 0


DEFAULT_SCORING = ScoringTable()


def score_guess(actual: Mood, guessed: Mood, table: ScoringTable = DEFAULT_SCORING) -> tuple[int, bool]:
    """Pure scoring function: (points, exact?)."""
    if actual is guessed:
        return table.exact, True
    if actual.grid_cell == guessed.grid_cell:
        return table.quadrant, False
    return table.miss, False


@dataclass(frozen=True)
class GuessResult:
    correct: bool
    actual_mood: Mood
    points_awarded: int
    updated_stats: PlayerStats

    def to_dict(self) -> dict[str, Any]:
        return {
            "correct": self.correct,
            "actual_mood": self.actual_mood.value,
            "points_awarded": self.points_awarded,
            "updated_stats": self.updated_stats.to_dict(),
        }


@dataclass(frozen=True)
class ConfusionMatrix:
    """9x9 guess counts for one player, indexed (actual, guessed) in catalog order."""

    cells: tuple[tuple[int, ...], ...]
    accuracy: float | None  # trace/total; None when the player has no guesses

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.cells)

    def to_dict(self) -> dict[str, Any]:
        return {
            "cells": [list(row) for row in self.cells],
            "accuracy": self.accuracy,
        }


def next_challenge(
    store: Store, user_id: str, scenario_id: str, rng: random.Random | None = None
) -> Vision:
    """Pick one eligible vision uniformly at random for the player to guess.

    Eligible means: in this scenario, not authored by the player, and not
    guessed by the player before. The RNG is injectable for determinism.
    """
    scenario = get_scenario(store, scenario_id)
    if scenario.status is not ScenarioStatus.PUBLISHED:
        raise ScenarioNotPublished(
            "the guessing game runs only on published scenarios",
            scenario_id=scenario_id,
            status=scenario.status.value,
        )
    eligible = store.visions.eligible_for(user_id, scenario_id)
    if not eligible:
        raise NoEligibleVisions(
            "no visions left to guess in this scenario", scenario_id=scenario_id
        )
    return (rng or _module_rng).choice(eligible)


def challenge_view(vision: Vision) -> dict[str, Any]:
    """Game payload for a challenge; deliberately omits the actual mood."""
    return {
        "vision_id": vision.vision_id,
        "scenario_id": vision.scenario_id,
        "image": vision.image.to_dict(),
        "caption": vision.caption,
        "created_at": rfc3339(vision.created_at),
    }


def submit_guess(
    store: Store,
    user_id: str,
    vision_id: str,
    guessed_mood: Mood,
    table: ScoringTable = DEFAULT_SCORING,
) -> GuessResult:
    """Record a guess and update player stats in one transaction.

    The guess snapshots the vision's mood at guess time and reveals it in the
    result. Streaks count consecutive exact matches only.
    """
    try:
        vision = store.visions.get(vision_id)
    except NotFound:
        raise UnknownVision(f"no vision {vision_id}", vision_id=vision_id) from None
    if vision.author == user_id:
        raise SelfGuess("players cannot guess their own visions", vision_id=vision_id)
    points, correct = score_guess(vision.mood, guessed_mood, table)

    def work(txn: Store) -> GuessResult:
        if txn.guesses.exists(user_id, vision_id):
            raise DuplicateGuess(
                "this player already guessed this vision", vision_id=vision_id, user_id=user_id
            )
        txn.guesses.create(user_id, vision, guessed_mood, points)
        stats = txn.stats.get(user_id, vision.scenario_id) or PlayerStats(
            user_id=user_id, scenario_id=vision.scenario_id
        )
        stats = replace(
            stats,
            total_points=stats.total_points + points,
            guesses_made=stats.guesses_made + 1,
            exact_matches=stats.exact_matches + (1 if correct else 0),
            current_streak=stats.current_streak + 1 if correct else 0,
        )
        txn.stats.put(stats)
        return GuessResult(
            correct=correct, actual_mood=vision.mood, points_awarded=points, updated_stats=stats
        )

    try:
        return store.atomically(work)
    except ConflictOnUnique:
        raise DuplicateGuess(
            "this player already guessed this vision", vision_id=vision_id, user_id=user_id
        ) from None


def player_stats(store: Store, user_id: str, scenario_id: str) -> PlayerStats:
    """Stored stats, or an all-zero record for players who have not guessed yet."""
    return store.stats.get(user_id, scenario_id) or PlayerStats(
        user_id=user_id, scenario_id=scenario_id
    )


def empathy_profile(store: Store, user_id: str, scenario_id: str) -> ConfusionMatrix:
    """Actual-vs-guessed mood counts for one player within a scenario."""
    counts = store.guesses.confusion_counts(user_id, scenario_id)
    catalog = mood_catalog()
    cells = tuple(
        tuple(counts.get((actual, guessed), 0) for guessed in catalog) for actual in catalog
    )
    total = sum(sum(row) for row in cells)
    if total == 0:
        return ConfusionMatrix(cells=cells, accuracy=None)
    trace = sum(cells[i][i] for i in range(len(catalog)))
    return ConfusionMatrix(cells=cells, accuracy=trace / total)
