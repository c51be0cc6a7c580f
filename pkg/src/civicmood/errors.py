"""Error types shared across the platform.

Every error carries a stable machine-readable ``code`` that the HTTP layer
reuses verbatim in error envelopes, plus an optional ``details`` map.
"""

from __future__ import annotations

from typing import Any


class PlatformError(Exception):
    """Base class for all domain and infrastructure errors."""

    code = "error"

    def __init__(self, message: str = "", **details: Any) -> None:
        super().__init__(message or self.code.replace("_", " "))
        self.message = message or self.code.replace("_", " ")
        self.details: dict[str, Any] = details


class ValidationError(PlatformError):
    """A field value violates a domain invariant."""

    code = "validation_error"


# --- domain-core ---

class IllegalTransition(PlatformError):
    code = "illegal_transition"


class NotOwner(PlatformError):
    code = "not_owner"


# --- survey-engine ---

class ScenarioNotPublished(PlatformError):
    code = "scenario_not_published"


class DuplicateResponse(PlatformError):
    code = "duplicate_response"


class IncompleteAnswers(PlatformError):
    code = "incomplete_answers"


class LevelOutOfRange(PlatformError):
    code = "level_out_of_range"


class UnknownStatement(PlatformError):
    code = "unknown_statement"


# --- image-search-client ---

class InvalidQuery(PlatformError):
    code = "invalid_query"


class ProviderUnavailable(PlatformError):
    code = "provider_unavailable"


class RateLimited(PlatformError):
    code = "rate_limited"

    def __init__(self, message: str = "", retry_after_seconds: int = 60, **details: Any) -> None:
        super().__init__(message, retry_after_seconds=retry_after_seconds, **details)
        self.retry_after_seconds = retry_after_seconds


# --- game-engine ---

class NoEligibleVisions(PlatformError):
    code = "no_eligible_visions"


class SelfGuess(PlatformError):
    code = "self_guess"


class DuplicateGuess(PlatformError):
    code = "duplicate_guess"


class UnknownVision(PlatformError):
    code = "unknown_vision"


# --- analytics ---

class UnknownScenario(PlatformError):
    code = "unknown_scenario"


class Forbidden(PlatformError):
    code = "forbidden"


# --- storage ---

class ConflictOnUnique(PlatformError):
    code = "conflict_on_unique"


class NotFound(PlatformError):
    code = "not_found"


class StorageUnavailable(PlatformError):
    code = "storage_unavailable"


class TransactionConflict(PlatformError):
    code = "transaction_conflict"


# --- http-api ---

class Unauthorized(PlatformError):
    code = "unauthorized"
