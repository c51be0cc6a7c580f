"""Pseudonymous signed-token sessions.

Tokens are an HMAC-SHA256-signed JSON payload: verifiable without any storage
lookup, expiring, and tamper-evident. There are no passwords; a handle plus
the token is the whole identity.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import json
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Any

from .domain import Role, rfc3339, utcnow
from .errors import Unauthorized

DEFAULT_SESSION_TTL_SECONDS = 24 * 3600


@dataclass(frozen=True)
class Session:
    session_token: str
    user_id: str
    role: Role
    issued_at: datetime
    expires_at: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_token": self.session_token,
            "user_id": self.user_id,
            "role": self.role.value,
            "issued_at": rfc3339(self.issued_at),
            "expires_at": rfc3339(self.expires_at),
        }


def _b64encode(raw: bytes) -> str:
    return base64.urlsafe_b64encode(raw).rstrip(b"=").decode("ascii")


def _b64decode(raw: str) -> bytes:
    padding = "=" * (-len(raw) % 4)
    return base64.urlsafe_b64decode(raw + padding)


def _sign(payload: bytes, secret: str) -> bytes:
    return hmac.new(secret.encode(), payload, hashlib.sha256).digest()


def issue_session(
    user_id: str,
    role: Role,
    secret: str,
    ttl_seconds: int = DEFAULT_SESSION_TTL_SECONDS,
    now: datetime | None = None,
) -> Session:
    issued_at = (now or utcnow()).astimezone(timezone.utc)
    expires_at = issued_at + timedelta(seconds=ttl_seconds)
    payload = json.dumps(
        {
            "user_id": user_id,
            "role": role.value,
            "iat": int(issued_at.timestamp()),
            "exp": int(expires_at.timestamp()),
        },
        separators=(",", ":"),
    ).encode()
    token = f"{_b64encode(payload)}.{_b64encode(_sign(payload, secret))}"
    return Session(
        session_token=token,
        user_id=user_id,
        role=role,
        issued_at=issued_at,
        expires_at=expires_at,
    )


def verify_session(token: str, secret: str, now: datetime | None = None) -> Session:
    """Validate signature and expiry; raise Unauthorized on any defect."""
    try:
        payload_b64, signature_b64 = token.split(".")
        payload = _b64decode(payload_b64)
        signature = _b64decode(signature_b64)
    except (ValueError, TypeError):
        raise Unauthorized("malformed session token") from None
    if not hmac.compare_digest(signature, _sign(payload, secret)):
        raise Unauthorized("session token signature mismatch")
    try:
        claims = json.loads(payload)
        user_id = claims["user_id"]
        role = Role(claims["role"])
        issued_at = datetime.fromtimestamp(int(claims["iat"]), tz=timezone.utc)
        expires_at = datetime.fromtimestamp(int(claims["exp"]), tz=timezone.utc)
    except (KeyError, ValueError, TypeError):
        raise Unauthorized("malformed session claims") from None
    if (now or utcnow()) >= expires_at:
        raise Unauthorized("session expired")
    return Session(
        session_token=token,
        user_id=user_id,
        role=role,
        issued_at=issued_at,
        expires_at=expires_at,
    )
