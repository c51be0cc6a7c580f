"""Core domain types: accounts, scenarios, moods, visions.

All values are immutable after construction (frozen dataclasses); operations
return new values instead of mutating. Each type validates its own invariants
in ``__post_init__`` and offers ``to_dict``/``from_dict`` for the canonical
JSON encoding (lower_snake_case fields, RFC 3339 UTC timestamps, moods as
lowercase name strings).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Mapping
from urllib.parse import urlparse

from .errors import IllegalTransition, NotOwner, ValidationError

TITLE_MAX = 120
DESCRIPTION_MAX = 2000
STATEMENT_TEXT_MAX = 500
STATEMENTS_MAX = 20
CAPTION_MAX = 280
HANDLE_MAX = 32
ATTRIBUTION_MAX = 200


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def rfc3339(dt: datetime) -> str:
    """Format a timestamp as an RFC 3339 UTC string."""
    if dt.tzinfo is None:
        raise ValidationError("naive timestamps are not allowed", value=str(dt))
    return dt.astimezone(timezone.utc).isoformat()


def parse_rfc3339(raw: str) -> datetime:
    """Parse an RFC 3339 string into an aware UTC datetime."""
    text = raw[:-1] + "+00:00" if raw.endswith(("Z", "z")) else raw
    try:
        dt = datetime.fromisoformat(text)
    except ValueError:
        raise ValidationError("invalid RFC 3339 timestamp", value=raw) from None
    if dt.tzinfo is None:
        raise ValidationError("timestamp missing UTC offset", value=raw)
    return dt.astimezone(timezone.utc)


class Role(str, Enum):
    CITIZEN = "citizen"
    POLICYMAKER = "policymaker"


class ScenarioStatus(str, Enum):
    DRAFT = "draft"
    PUBLISHED = "published"
    ARCHIVED = "archived"


class Mood(str, Enum):
    """The closed nine-state mood catalog on a valence/arousal grid."""

    EXCITED = "excited"
    CHEERFUL = "cheerful"
    RELAXED = "relaxed"
    CALM = "calm"
    NEUTRAL = "neutral"
    BORED = "bored"
    SAD = "sad"
    IRRITATED = "irritated"
    TENSE = "tense"

    @property
    def valence(self) -> int:
        return _MOOD_GRID[self][0]

    @property
    def arousal(self) -> int:
        return _MOOD_GRID[self][1]

    @property
    def grid_cell(self) -> tuple[int, int]:
        """(valence, arousal) cell; moods sharing a cell earn partial credit."""
        return _MOOD_GRID[self]


_MOOD_GRID: dict[Mood, tuple[int, int]] = {
    Mood.EXCITED: (1, 1),
    Mood.CHEERFUL: (1, 1),
    Mood.RELAXED: (1, -1),
    Mood.CALM: (1, -1),
    Mood.NEUTRAL: (0, 0),
    Mood.BORED: (-1, -1),
    Mood.SAD: (-1, -1),
    Mood.IRRITATED: (-1, 1),
    Mood.TENSE: (-1, 1),
}


def mood_catalog() -> list[Mood]:
    """The nine moods in fixed catalog order; stable across calls."""
    return list(Mood)


def parse_mood(raw: str) -> Mood:
    try:
        return Mood(raw)
    except ValueError:
        raise ValidationError("unknown mood", mood=raw) from None


def _check_text(value: str, name: str, min_len: int, max_len: int) -> None:
    if not isinstance(value, str):
        raise ValidationError(f"{name} must be a string", field=name)
    if not (min_len <= len(value) <= max_len):
        raise ValidationError(
            f"{name} length must be {min_len}-{max_len} characters",
            field=name,
            length=len(value),
        )


@dataclass(frozen=True)
class UserAccount:
    user_id: str
    handle: str
    role: Role
    created_at: datetime

    def __post_init__(self) -> None:
        _check_text(self.handle, "handle", 1, HANDLE_MAX)
        if any(ch < " " or ch == "\x7f" for ch in self.handle):
            raise ValidationError("handle must not contain control characters", field="handle")
        if not isinstance(self.role, Role):
            raise ValidationError("role must be citizen or policymaker", field="role")

    def to_dict(self) -> dict[str, Any]:
        return {
            "user_id": self.user_id,
            "handle": self.handle,
            "role": self.role.value,
            "created_at": rfc3339(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "UserAccount":
        return cls(
            user_id=data["user_id"],
            handle=data["handle"],
            role=Role(data["role"]),
            created_at=parse_rfc3339(data["created_at"]),
        )


@dataclass(frozen=True)
class Statement:
    statement_id: str
    text: str
    position: int

    def __post_init__(self) -> None:
        _check_text(self.text, "statement text", 1, STATEMENT_TEXT_MAX)
        if self.position < 0:
            raise ValidationError("statement position must be non-negative", field="position")

    def to_dict(self) -> dict[str, Any]:
        return {"statement_id": self.statement_id, "text": self.text, "position": self.position}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Statement":
        return cls(
            statement_id=data["statement_id"],
            text=data["text"],
            position=int(data["position"]),
        )


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    owner: str
    title: str
    description: str
    statements: tuple[Statement, ...]
    status: ScenarioStatus
    created_at: datetime
    published_at: datetime | None = None

    def __post_init__(self) -> None:
        _check_text(self.title, "title", 1, TITLE_MAX)
        _check_text(self.description, "description", 0, DESCRIPTION_MAX)
        object.__setattr__(self, "statements", tuple(self.statements))
        if len(self.statements) > STATEMENTS_MAX:
            raise ValidationError(
                f"a scenario holds at most {STATEMENTS_MAX} statements",
                count=len(self.statements),
            )
        positions = [s.position for s in self.statements]
        if positions != list(range(len(positions))):
            raise ValidationError("statement positions must be contiguous from 0", positions=positions)
        if self.status is not ScenarioStatus.DRAFT and not self.statements:
            raise ValidationError("a published scenario needs at least one statement")
        if self.status is not ScenarioStatus.DRAFT and self.published_at is None:
            raise ValidationError("published scenarios carry a published_at timestamp")

    def statement_ids(self) -> list[str]:
        return [s.statement_id for s in self.statements]

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario_id": self.scenario_id,
            "owner": self.owner,
            "title": self.title,
            "description": self.description,
            "statements": [s.to_dict() for s in self.statements],
            "status": self.status.value,
            "created_at": rfc3339(self.created_at),
            "published_at": rfc3339(self.published_at) if self.published_at else None,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Scenario":
        return cls(
            scenario_id=data["scenario_id"],
            owner=data["owner"],
            title=data["title"],
            description=data["description"],
            statements=tuple(Statement.from_dict(s) for s in data["statements"]),
            status=ScenarioStatus(data["status"]),
            created_at=parse_rfc3339(data["created_at"]),
            published_at=parse_rfc3339(data["published_at"]) if data.get("published_at") else None,
        )


# Legal lifecycle edges; anything else is rejected.
_LEGAL_TRANSITIONS = {
    (ScenarioStatus.DRAFT, ScenarioStatus.PUBLISHED),
    (ScenarioStatus.PUBLISHED, ScenarioStatus.ARCHIVED),
}


def transition_scenario(
    scenario: Scenario,
    target: ScenarioStatus,
    actor_id: str,
    now: datetime | None = None,
) -> Scenario:
    """Move a scenario along its lifecycle; only the owner may do so.

    Draft -> Published sets ``published_at``; all other fields are unchanged.
    """
    if actor_id != scenario.owner:
        raise NotOwner("only the scenario owner may change its status", scenario_id=scenario.scenario_id)
    if (scenario.status, target) not in _LEGAL_TRANSITIONS:
        raise IllegalTransition(
            f"cannot move a {scenario.status.value} scenario to {target.value}",
            from_status=scenario.status.value,
            to_status=target.value,
        )
    if target is ScenarioStatus.PUBLISHED and not scenario.statements:
        raise IllegalTransition("cannot publish a scenario with no statements")
    published_at = scenario.published_at
    if target is ScenarioStatus.PUBLISHED:
        published_at = now or utcnow()
    return replace(scenario, status=target, published_at=published_at)


def _valid_absolute_url(url: str) -> bool:
    try:
        parts = urlparse(url)
    except ValueError:
        return False
    return parts.scheme in ("http", "https") and bool(parts.netloc)


@dataclass(frozen=True)
class ImageRef:
    source_url: str
    thumbnail_url: str
    attribution: str = ""
    provider_id: str = ""

    def __post_init__(self) -> None:
        for name, url in (("source_url", self.source_url), ("thumbnail_url", self.thumbnail_url)):
            if not _valid_absolute_url(url):
                raise ValidationError(f"{name} must be an absolute http(s) URL", field=name, url=url)
        _check_text(self.attribution, "attribution", 0, ATTRIBUTION_MAX)

    def to_dict(self) -> dict[str, Any]:
        return {
            "source_url": self.source_url,
            "thumbnail_url": self.thumbnail_url,
            "attribution": self.attribution,
            "provider_id": self.provider_id,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ImageRef":
        return cls(
            source_url=data["source_url"],
            thumbnail_url=data["thumbnail_url"],
            attribution=data.get("attribution", ""),
            provider_id=data.get("provider_id", ""),
        )


@dataclass(frozen=True)
class Vision:
    vision_id: str
    scenario_id: str
    author: str
    image: ImageRef
    caption: str
    mood: Mood
    created_at: datetime

    def __post_init__(self) -> None:
        _check_text(self.caption, "caption", 1, CAPTION_MAX)
        if not self.caption.strip():
            raise ValidationError("caption must not be blank", field="caption")
        if not isinstance(self.mood, Mood):
            raise ValidationError("mood must be one of the nine catalog moods", field="mood")

    def to_dict(self) -> dict[str, Any]:
        return {
            "vision_id": self.vision_id,
            "scenario_id": self.scenario_id,
            "author": self.author,
            "image": self.image.to_dict(),
            "caption": self.caption,
            "mood": self.mood.value,
            "created_at": rfc3339(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Vision":
        return cls(
            vision_id=data["vision_id"],
            scenario_id=data["scenario_id"],
            author=data["author"],
            image=ImageRef.from_dict(data["image"]),
            caption=data["caption"],
            mood=Mood(data["mood"]),
            created_at=parse_rfc3339(data["created_at"]),
        )


@dataclass(frozen=True)
class SurveyResponse:
    response_id: str
    scenario_id: str
    user_id: str
    answers: Mapping[str, int]
    submitted_at: datetime

    def __post_init__(self) -> None:
        answers = dict(self.answers)
        for statement_id, level in answers.items():
            if not isinstance(level, int) or isinstance(level, bool) or not 1 <= level <= 5:
                raise ValidationError(
                    "levels are integers 1 (strongly disagree) to 5 (strongly agree)",
                    statement_id=statement_id,
                    level=level,
                )
        object.__setattr__(self, "answers", answers)

    def to_dict(self) -> dict[str, Any]:
        return {
            "response_id": self.response_id,
            "scenario_id": self.scenario_id,
            "user_id": self.user_id,
            "answers": dict(self.answers),
            "submitted_at": rfc3339(self.submitted_at),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SurveyResponse":
        return cls(
            response_id=data["response_id"],
            scenario_id=data["scenario_id"],
            user_id=data["user_id"],
            answers={k: int(v) for k, v in data["answers"].items()},
            submitted_at=parse_rfc3339(data["submitted_at"]),
        )


@dataclass(frozen=True)
class Guess:
    guess_id: str
    guesser: str
    vision_id: str
    guessed_mood: Mood
    actual_mood: Mood  # snapshot at guess time; immune to later vision edits
    points_awarded: int
    created_at: datetime

    def __post_init__(self) -> None:
        if self.points_awarded < 0:
            raise ValidationError("points_awarded must be non-negative", points=self.points_awarded)

    def to_dict(self) -> dict[str, Any]:
        return {
            "guess_id": self.guess_id,
            "guesser": self.guesser,
            "vision_id": self.vision_id,
            "guessed_mood": self.guessed_mood.value,
            "actual_mood": self.actual_mood.value,
            "points_awarded": self.points_awarded,
            "created_at": rfc3339(self.created_at),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Guess":
        return cls(
            guess_id=data["guess_id"],
            guesser=data["guesser"],
            vision_id=data["vision_id"],
            guessed_mood=Mood(data["guessed_mood"]),
            actual_mood=Mood(data["actual_mood"]),
            points_awarded=int(data["points_awarded"]),
            created_at=parse_rfc3339(data["created_at"]),
        )


@dataclass(frozen=True)
class PlayerStats:
    user_id: str
    scenario_id: str
    total_points: int = 0
    guesses_made: int = 0
    exact_matches: int = 0
    current_streak: int = 0

    def __post_init__(self) -> None:
        if min(self.total_points, self.guesses_made, self.exact_matches, self.current_streak) < 0:
            raise ValidationError("stats counters must be non-negative")
        if self.exact_matches > self.guesses_made:
            raise ValidationError("exact_matches cannot exceed guesses_made")
        if self.current_streak > self.exact_matches:
            raise ValidationError("current_streak cannot exceed exact_matches")

    def to_dict(self) -> dict[str, Any]:
        return {
            "user_id": self.user_id,
            "scenario_id": self.scenario_id,
            "total_points": self.total_points,
            "guesses_made": self.guesses_made,
            "exact_matches": self.exact_matches,
            "current_streak": self.current_streak,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PlayerStats":
        return cls(
            user_id=data["user_id"],
            scenario_id=data["scenario_id"],
            total_points=int(data["total_points"]),
            guesses_made=int(data["guesses_made"]),
            exact_matches=int(data["exact_matches"]),
            current_streak=int(data["current_streak"]),
        )
