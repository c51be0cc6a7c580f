"""Environment parsing, scoring overrides, and transaction retry behavior."""

import pytest
import sqlalchemy as sa
from sqlalchemy.exc import OperationalError

from civicmood.config import Config
from civicmood.domain import Mood, Role
from civicmood.errors import TransactionConflict
from civicmood.game import score_guess
from civicmood.storage import open_store


class TestConfig:
    def test_defaults(self):
        config = Config.from_env({})
        assert config.storage_url == "embedded:"
        assert config.admin_key == ""
        assert config.scoring.exact == 10
        assert config.scoring.quadrant == 5
        assert config.scoring.miss == 0
        assert config.session_secret  # ephemeral secret generated

    def test_env_overrides(self):
        config = Config.from_env(
            {
                "BIND_ADDR": "0.0.0.0:9001",
                "SESSION_SECRET": "fixed",
                "ADMIN_KEY": "key",
                "CORS_ORIGINS": "https://a.test, https://b.test",
                "STORAGE_URL": "embedded:/srv/data.db",
                "CACHE_TTL_SECONDS": "60",
                "SCORE_EXACT": "7",
                "SCORE_QUADRANT": "3",
                "SCORE_MISS": "1",
            }
        )
        assert config.bind_addr == "0.0.0.0:9001"
        assert config.cors_origins == ["https://a.test", "https://b.test"]
        assert config.cache_ttl_seconds == 60.0
        assert score_guess(Mood.CALM, Mood.CALM, config.scoring) == (7, True)
        assert score_guess(Mood.CALM, Mood.RELAXED, config.scoring) == (3, False)
        assert score_guess(Mood.CALM, Mood.TENSE, config.scoring) == (1, False)


class _FlakyEngine:
    """Delegates to a real engine but fails the first N begin() calls
    with a database-locked error."""

    def __init__(self, engine: sa.Engine, failures: int) -> None:
        self._engine = engine
        self.failures = failures
        self.attempts = 0

    def begin(self):
        self.attempts += 1
        if self.attempts <= self.failures:
            raise OperationalError("BEGIN", {}, Exception("database is locked"))
        return self._engine.begin()

    def __getattr__(self, name):
        return getattr(self._engine, name)


class TestTransactionRetry:
    def test_conflicts_retried_up_to_three_attempts(self):
        store = open_store("embedded:")
        store._engine = _FlakyEngine(store._engine, failures=2)
        user = store.atomically(lambda txn: txn.users.create("retried", Role.CITIZEN))
        assert store._engine.attempts == 3
        assert store.users.get(user.user_id).handle == "retried"
        store.close()

    def test_persistent_conflict_surfaces_after_three_attempts(self):
        store = open_store("embedded:")
        flaky = _FlakyEngine(store._engine, failures=99)
        store._engine = flaky
        with pytest.raises(TransactionConflict):
            store.atomically(lambda txn: txn.users.create("never", Role.CITIZEN))
        assert flaky.attempts == 3
        store.close()
