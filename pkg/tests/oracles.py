"""Naive recount oracles used to cross-check every aggregate the engines produce.

These stay deliberately independent of the implementation: plain folds over
raw Python lists, no storage, no reuse of engine helpers.
"""

from __future__ import annotations

import statistics
from collections import Counter

from civicmood.domain import Mood, mood_catalog


def likert_oracle(levels: list[int]) -> dict:
    counts = Counter(levels)
    histogram = [counts.get(level, 0) for level in range(1, 6)]
    if not levels:
        return {"counts": histogram, "n": 0, "mean": None, "median": None}
    return {
        "counts": histogram,
        "n": len(levels),
        "mean": sum(levels) / len(levels),
        "median": float(statistics.median(sorted(levels))),
    }


def mood_distribution_oracle(moods: list[Mood]) -> dict[Mood, tuple[int, float]]:
    counts = Counter(moods)
    total = len(moods)
    return {
        mood: (counts.get(mood, 0), counts.get(mood, 0) / total if total else 0.0)
        for mood in mood_catalog()
    }


def confusion_oracle(pairs: list[tuple[Mood, Mood]]) -> dict:
    """pairs are (actual, guessed); returns cells in catalog order plus accuracy."""
    catalog = mood_catalog()
    counts = Counter(pairs)
    cells = [[counts.get((a, g), 0) for g in catalog] for a in catalog]
    total = len(pairs)
    exact = sum(1 for actual, guessed in pairs if actual is guessed)
    return {"cells": cells, "accuracy": exact / total if total else None}


def accuracy_oracle(pairs: list[tuple[Mood, Mood]]) -> float | None:
    if not pairs:
        return None
    return sum(1 for actual, guessed in pairs if actual is guessed) / len(pairs)


def total_points_oracle(points: list[int]) -> int:
    return sum(points)


def scoring_oracle(actual: Mood, guessed: Mood, exact: int = 10, quadrant: int = 5, miss: int = 0) -> int:
    """Scoring recomputed from the mood grid definition alone."""
    if actual is guessed:
        return exact
    if (actual.valence, actual.arousal) == (guessed.valence, guessed.arousal):
        return quadrant
    return miss
