"""Environment-driven configuration for the server process."""

from __future__ import annotations

import os
import secrets
from dataclasses import dataclass, field

from .game import ScoringTable

DEFAULT_BIND_ADDR = "127.0.0.1:8000"
DEV_ORIGIN = "http://localhost:5173"


@dataclass
class Config:
    bind_addr: str = DEFAULT_BIND_ADDR
    session_secret: str = ""
    admin_key: str = ""  # empty disables policymaker session creation
    cors_origins: list[str] = field(default_factory=lambda: [DEV_ORIGIN])
    storage_url: str = "embedded:"
    provider_base_url: str = ""
    provider_api_key: str = ""
    cache_ttl_seconds: float = 900.0
    scoring: ScoringTable = field(default_factory=ScoringTable)

    def __post_init__(self) -> None:
        if not self.session_secret:
            # Ephemeral dev secret: sessions do not survive a restart.
            self.session_secret = secrets.token_hex(32)

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "Config":
        env = dict(os.environ if env is None else env)
        origins = [o.strip() for o in env.get("CORS_ORIGINS", DEV_ORIGIN).split(",") if o.strip()]
        return cls(
            bind_addr=env.get("BIND_ADDR", DEFAULT_BIND_ADDR),
            session_secret=env.get("SESSION_SECRET", ""),
            admin_key=env.get("ADMIN_KEY", ""),
            cors_origins=origins,
            storage_url=env.get("STORAGE_URL", "embedded:"),
            provider_base_url=env.get("PROVIDER_BASE_URL", ""),
            provider_api_key=env.get("PROVIDER_API_KEY", ""),
            cache_ttl_seconds=float(env.get("CACHE_TTL_SECONDS", "900")),
            scoring=ScoringTable(
                exact=int(env.get("SCORE_EXACT", "10")),
                quadrant=int(env.get("SCORE_QUADRANT", "5")),
                miss=int(env.get("SCORE_MISS", "0")),
            ),
        )
