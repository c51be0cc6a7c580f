"""Persistence layer: repositories over an embedded or server SQL backend.

The embedded backend is zero-config SQLite (in-memory or file); the server
backend accepts any SQLAlchemy connection URL. All repositories hang off a
``Store``; ``Store.atomically`` runs a unit of work in one transaction with
read-your-writes and bounded retry on transaction conflicts. Opaque ids are
UUIDv4 strings minted here, at the storage boundary.
"""

from __future__ import annotations

import threading
import uuid
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Callable, Iterator, Sequence, TypeVar

import sqlalchemy as sa
from sqlalchemy.exc import IntegrityError, OperationalError, SQLAlchemyError
from sqlalchemy.pool import StaticPool

from . import domain
from .domain import (
    Guess,
    ImageRef,
    Mood,
    PlayerStats,
    Role,
    Scenario,
    ScenarioStatus,
    Statement,
    SurveyResponse,
    UserAccount,
    Vision,
    parse_rfc3339,
    rfc3339,
)
from .errors import (
    ConflictOnUnique,
    NotFound,
    StorageUnavailable,
    TransactionConflict,
    ValidationError,
)

T = TypeVar("T")

PAGE_SIZE_MAX = 100
TRANSACTION_ATTEMPTS = 3


class Backend(str, Enum):
    EMBEDDED = "embedded"
    SERVER = "server"


@dataclass(frozen=True)
class StoreHandle:
    backend: Backend
    schema_version: int


@dataclass(frozen=True)
class Page:
    items: tuple
    page: int
    page_size: int
    total: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "items": [item.to_dict() for item in self.items],
            "page": self.page,
            "page_size": self.page_size,
            "total": self.total,
        }


METADATA = sa.MetaData()

META = sa.Table(
    "schema_meta",
    METADATA,
    sa.Column("key", sa.String(64), primary_key=True),
    sa.Column("value", sa.String(255), nullable=False),
)

USERS = sa.Table(
    "users",
    METADATA,
    sa.Column("seq", sa.Integer, primary_key=True, autoincrement=True),
    sa.Column("user_id", sa.String(36), nullable=False, unique=True),
    sa.Column("handle", sa.String(32), nullable=False, unique=True),
    sa.Column("role", sa.String(16), nullable=False),
    sa.Column("created_at", sa.String(40), nullable=False),
)

SCENARIOS = sa.Table(
    "scenarios",
    METADATA,
    sa.Column("seq", sa.Integer, primary_key=True, autoincrement=True),
    sa.Column("scenario_id", sa.String(36), nullable=False, unique=True),
    sa.Column("owner", sa.String(36), nullable=False),
    sa.Column("title", sa.String(120), nullable=False),
    sa.Column("description", sa.Text, nullable=False),
    sa.Column("status", sa.String(16), nullable=False),
    sa.Column("created_at", sa.String(40), nullable=False),
    sa.Column("published_at", sa.String(40), nullable=True),
)

STATEMENTS = sa.Table(
    "statements",
    METADATA,
    sa.Column("seq", sa.Integer, primary_key=True, autoincrement=True),
    sa.Column("statement_id", sa.String(36), nullable=False, unique=True),
    sa.Column("scenario_id", sa.String(36), nullable=False),
    sa.Column("text", sa.Text, nullable=False),
    sa.Column("position", sa.Integer, nullable=False),
    sa.UniqueConstraint("scenario_id", "position", name="uq_statement_position"),
)

RESPONSES = sa.Table(
    "responses",
    METADATA,
    sa.Column("seq", sa.Integer, primary_key=True, autoincrement=True),
    sa.Column("response_id", sa.String(36), nullable=False, unique=True),
    sa.Column("scenario_id", sa.String(36), nullable=False),
    sa.Column("user_id", sa.String(36), nullable=False),
    sa.Column("submitted_at", sa.String(40), nullable=False),
    sa.UniqueConstraint("scenario_id", "user_id", name="uq_response_per_user"),
)

RESPONSE_ANSWERS = sa.Table(
    "response_answers",
    METADATA,
    sa.Column("response_id", sa.String(36), primary_key=True),
    sa.Column("statement_id", sa.String(36), primary_key=True),
    sa.Column("level", sa.Integer, nullable=False),
)

VISIONS = sa.Table(
    "visions",
    METADATA,
    sa.Column("seq", sa.Integer, primary_key=True, autoincrement=True),
    sa.Column("vision_id", sa.String(36), nullable=False, unique=True),
    sa.Column("scenario_id", sa.String(36), nullable=False),
    sa.Column("author", sa.String(36), nullable=False),
    sa.Column("source_url", sa.Text, nullable=False),
    sa.Column("thumbnail_url", sa.Text, nullable=False),
    sa.Column("attribution", sa.String(200), nullable=False),
    sa.Column("provider_id", sa.String(128), nullable=False),
    sa.Column("caption", sa.String(280), nullable=False),
    sa.Column("mood", sa.String(16), nullable=False),
    sa.Column("created_at", sa.String(40), nullable=False),
)

GUESSES = sa.Table(
    "guesses",
    METADATA,
    sa.Column("seq", sa.Integer, primary_key=True, autoincrement=True),
    sa.Column("guess_id", sa.String(36), nullable=False, unique=True),
    sa.Column("guesser", sa.String(36), nullable=False),
    sa.Column("vision_id", sa.String(36), nullable=False),
    # scenario_id is denormalized from the vision for per-scenario queries
    sa.Column("scenario_id", sa.String(36), nullable=False),
    sa.Column("guessed_mood", sa.String(16), nullable=False),
    sa.Column("actual_mood", sa.String(16), nullable=False),
    sa.Column("points_awarded", sa.Integer, nullable=False),
    sa.Column("created_at", sa.String(40), nullable=False),
    sa.UniqueConstraint("guesser", "vision_id", name="uq_guess_per_vision"),
)

PLAYER_STATS = sa.Table(
    "player_stats",
    METADATA,
    sa.Column("user_id", sa.String(36), primary_key=True),
    sa.Column("scenario_id", sa.String(36), primary_key=True),
    sa.Column("total_points", sa.Integer, nullable=False),
    sa.Column("guesses_made", sa.Integer, nullable=False),
    sa.Column("exact_matches", sa.Integer, nullable=False),
    sa.Column("current_streak", sa.Integer, nullable=False),
)


def _migration_0001(conn: sa.Connection) -> None:
    METADATA.create_all(conn, checkfirst=True)


# Ordered migration registry; each entry runs once, inside a transaction,
# and bumps the recorded schema version.
MIGRATIONS: list[tuple[int, str, Callable[[sa.Connection], None]]] = [
    (1, "initial schema", _migration_0001),
]

EXPECTED_SCHEMA_VERSION = MIGRATIONS[-1][0]


def _is_conflict(exc: OperationalError) -> bool:
    text = str(exc.orig or exc).lower()
    return "locked" in text or "busy" in text or "deadlock" in text


def _map_sa_error(exc: SQLAlchemyError) -> Exception:
    if isinstance(exc, IntegrityError):
        return ConflictOnUnique(f"unique constraint violated: {exc.orig}")
    if isinstance(exc, OperationalError) and _is_conflict(exc):
        return TransactionConflict(str(exc.orig))
    return StorageUnavailable(f"storage backend error: {exc}")


def parse_storage_url(url: str) -> tuple[Backend, str]:
    """Map a STORAGE_URL value to (backend, SQLAlchemy URL)."""
    if url in ("embedded:", "embedded"):
        return Backend.EMBEDDED, "sqlite://"
    if url.startswith("embedded:"):
        return Backend.EMBEDDED, f"sqlite:///{url[len('embedded:'):]}"
    return Backend.SERVER, url


def open_store(
    url: str = "embedded:",
    migrate: bool = True,
    id_factory: Callable[[], str] | None = None,
    clock: Callable[[], datetime] | None = None,
) -> "Store":
    """Open (and by default migrate) the store behind a STORAGE_URL value."""
    backend, sa_url = parse_storage_url(url)
    try:
        if sa_url == "sqlite://":
            # One shared in-memory database across all handler threads.
            engine = sa.create_engine(
                sa_url, poolclass=StaticPool, connect_args={"check_same_thread": False}
            )
        elif sa_url.startswith("sqlite"):
            engine = sa.create_engine(sa_url, connect_args={"check_same_thread": False})
        else:
            engine = sa.create_engine(sa_url)
    except SQLAlchemyError as exc:
        raise StorageUnavailable(f"cannot open storage url {url!r}: {exc}") from exc
    store = Store(engine, backend, id_factory=id_factory, clock=clock)
    store._ensure_schema(migrate=migrate)
    return store


class Store:
    """Repository bundle plus transaction control over one backend."""

    def __init__(
        self,
        engine: sa.Engine,
        backend: Backend,
        lock: threading.RLock | None = None,
        conn: sa.Connection | None = None,
        id_factory: Callable[[], str] | None = None,
        clock: Callable[[], datetime] | None = None,
    ) -> None:
        self._engine = engine
        self._backend = backend
        self._lock = lock or threading.RLock()
        self._conn = conn
        self.new_id = id_factory or (lambda: str(uuid.uuid4()))
        self.now = clock or domain.utcnow
        self.users = UserRepo(self)
        self.scenarios = ScenarioRepo(self)
        self.responses = ResponseRepo(self)
        self.visions = VisionRepo(self)
        self.guesses = GuessRepo(self)
        self.stats = StatsRepo(self)

    @property
    def handle(self) -> StoreHandle:
        return StoreHandle(backend=self._backend, schema_version=EXPECTED_SCHEMA_VERSION)

    def close(self) -> None:
        self._engine.dispose()

    # -- schema ----------------------------------------------------------

    def _ensure_schema(self, migrate: bool) -> None:
        with self._lock:
            try:
                with self._engine.begin() as conn:
                    META.create(conn, checkfirst=True)
                    current = self._read_version(conn)
                    if current > EXPECTED_SCHEMA_VERSION:
                        raise StorageUnavailable(
                            f"database schema version {current} is newer than the supported "
                            f"version {EXPECTED_SCHEMA_VERSION}; upgrade civicmood before serving"
                        )
                    if current < EXPECTED_SCHEMA_VERSION:
                        if not migrate:
                            raise StorageUnavailable(
                                f"database schema version {current} is behind expected "
                                f"{EXPECTED_SCHEMA_VERSION}; run `civicmood serve` (or open the "
                                f"store with migrate=True) to apply migrations"
                            )
                        for version, _description, apply in MIGRATIONS:
                            if version > current:
                                apply(conn)
                        self._write_version(conn, EXPECTED_SCHEMA_VERSION)
            except SQLAlchemyError as exc:
                raise _map_sa_error(exc) from exc

    @staticmethod
    def _read_version(conn: sa.Connection) -> int:
        row = conn.execute(sa.select(META.c.value).where(META.c.key == "schema_version")).first()
        return int(row[0]) if row else 0

    @staticmethod
    def _write_version(conn: sa.Connection, version: int) -> None:
        updated = conn.execute(
            sa.update(META).where(META.c.key == "schema_version").values(value=str(version))
        )
        if updated.rowcount == 0:
            conn.execute(sa.insert(META).values(key="schema_version", value=str(version)))

    # -- transactions ----------------------------------------------------

    @contextmanager
    def _connect(self) -> Iterator[sa.Connection]:
        """Yield the enclosing transaction's connection, or a one-op transaction."""
        if self._conn is not None:
            try:
                yield self._conn
            except SQLAlchemyError as exc:
                raise _map_sa_error(exc) from exc
            return
        with self._lock:
            try:
                with self._engine.begin() as conn:
                    yield conn
            except SQLAlchemyError as exc:
                raise _map_sa_error(exc) from exc

    def atomically(self, work: Callable[["Store"], T]) -> T:
        """Run ``work`` against a transactional store view; commit all or nothing.

        Retries up to three times when the backend reports a transaction
        conflict (e.g. a write lock held by another process).
        """
        if self._conn is not None:
            return work(self)
        last_conflict: TransactionConflict | None = None
        for _attempt in range(TRANSACTION_ATTEMPTS):
            with self._lock:
                try:
                    with self._engine.begin() as conn:
                        view = Store(
                            self._engine,
                            self._backend,
                            lock=self._lock,
                            conn=conn,
                            id_factory=self.new_id,
                            clock=self.now,
                        )
                        return work(view)
                except SQLAlchemyError as exc:
                    mapped = _map_sa_error(exc)
                    if isinstance(mapped, TransactionConflict):
                        last_conflict = mapped
                        continue
                    raise mapped from exc
        assert last_conflict is not None
        raise last_conflict


class _Repo:
    def __init__(self, store: Store) -> None:
        self._store = store

    def _one(self, conn: sa.Connection, stmt: sa.Select, what: str) -> sa.Row:
        row = conn.execute(stmt).first()
        if row is None:
            raise NotFound(f"{what} not found")
        return row


def _check_pagination(page: int, page_size: int) -> None:
    if page < 1:
        raise ValidationError("page starts at 1", page=page)
    if not 1 <= page_size <= PAGE_SIZE_MAX:
        raise ValidationError(f"page_size must be 1-{PAGE_SIZE_MAX}", page_size=page_size)


class UserRepo(_Repo):
    def create(self, handle: str, role: Role) -> UserAccount:
        user = UserAccount(
            user_id=self._store.new_id(),
            handle=handle,
            role=role,
            created_at=self._store.now(),
        )
        with self._store._connect() as conn:
            conn.execute(
                sa.insert(USERS).values(
                    user_id=user.user_id,
                    handle=user.handle,
                    role=user.role.value,
                    created_at=rfc3339(user.created_at),
                )
            )
        return user

    def get(self, user_id: str) -> UserAccount:
        with self._store._connect() as conn:
            row = self._one(conn, sa.select(USERS).where(USERS.c.user_id == user_id), "user")
        return self._to_entity(row)

    def list_all(self) -> list[UserAccount]:
        with self._store._connect() as conn:
            rows = conn.execute(sa.select(USERS).order_by(USERS.c.seq)).all()
        return [self._to_entity(r) for r in rows]

    @staticmethod
    def _to_entity(row: sa.Row) -> UserAccount:
        return UserAccount(
            user_id=row.user_id,
            handle=row.handle,
            role=Role(row.role),
            created_at=parse_rfc3339(row.created_at),
        )


class ScenarioRepo(_Repo):
    def create(self, owner: str, title: str, description: str, statement_texts: Sequence[str]) -> Scenario:
        statements = tuple(
            Statement(statement_id=self._store.new_id(), text=text, position=i)
            for i, text in enumerate(statement_texts)
        )
        scenario = Scenario(
            scenario_id=self._store.new_id(),
            owner=owner,
            title=title,
            description=description,
            statements=statements,
            status=ScenarioStatus.DRAFT,
            created_at=self._store.now(),
        )
        with self._store._connect() as conn:
            conn.execute(
                sa.insert(SCENARIOS).values(
                    scenario_id=scenario.scenario_id,
                    owner=scenario.owner,
                    title=scenario.title,
                    description=scenario.description,
                    status=scenario.status.value,
                    created_at=rfc3339(scenario.created_at),
                    published_at=None,
                )
            )
            if statements:
                conn.execute(
                    sa.insert(STATEMENTS),
                    [
                        {
                            "statement_id": s.statement_id,
                            "scenario_id": scenario.scenario_id,
                            "text": s.text,
                            "position": s.position,
                        }
                        for s in statements
                    ],
                )
        return scenario

    def get(self, scenario_id: str) -> Scenario:
        with self._store._connect() as conn:
            row = self._one(
                conn, sa.select(SCENARIOS).where(SCENARIOS.c.scenario_id == scenario_id), "scenario"
            )
            stmt_rows = conn.execute(
                sa.select(STATEMENTS)
                .where(STATEMENTS.c.scenario_id == scenario_id)
                .order_by(STATEMENTS.c.position)
            ).all()
        return self._to_entity(row, stmt_rows)

    def set_status(self, scenario: Scenario) -> Scenario:
        """Persist the status and published_at of an already-transitioned scenario."""
        with self._store._connect() as conn:
            result = conn.execute(
                sa.update(SCENARIOS)
                .where(SCENARIOS.c.scenario_id == scenario.scenario_id)
                .values(
                    status=scenario.status.value,
                    published_at=rfc3339(scenario.published_at) if scenario.published_at else None,
                )
            )
            if result.rowcount == 0:
                raise NotFound("scenario not found")
        return scenario

    def list(self, status: ScenarioStatus | None = None) -> list[Scenario]:
        with self._store._connect() as conn:
            stmt = sa.select(SCENARIOS).order_by(SCENARIOS.c.seq.desc())
            if status is not None:
                stmt = stmt.where(SCENARIOS.c.status == status.value)
            rows = conn.execute(stmt).all()
            out = []
            for row in rows:
                stmt_rows = conn.execute(
                    sa.select(STATEMENTS)
                    .where(STATEMENTS.c.scenario_id == row.scenario_id)
                    .order_by(STATEMENTS.c.position)
                ).all()
                out.append(self._to_entity(row, stmt_rows))
        return out

    @staticmethod
    def _to_entity(row: sa.Row, stmt_rows: Sequence[sa.Row]) -> Scenario:
        return Scenario(
            scenario_id=row.scenario_id,
            owner=row.owner,
            title=row.title,
            description=row.description,
            statements=tuple(
                Statement(statement_id=s.statement_id, text=s.text, position=s.position)
                for s in stmt_rows
            ),
            status=ScenarioStatus(row.status),
            created_at=parse_rfc3339(row.created_at),
            published_at=parse_rfc3339(row.published_at) if row.published_at else None,
        )


class ResponseRepo(_Repo):
    def create(self, scenario_id: str, user_id: str, answers: dict[str, int]) -> SurveyResponse:
        response = SurveyResponse(
            response_id=self._store.new_id(),
            scenario_id=scenario_id,
            user_id=user_id,
            answers=answers,
            submitted_at=self._store.now(),
        )
        with self._store._connect() as conn:
            conn.execute(
                sa.insert(RESPONSES).values(
                    response_id=response.response_id,
                    scenario_id=response.scenario_id,
                    user_id=response.user_id,
                    submitted_at=rfc3339(response.submitted_at),
                )
            )
            if response.answers:
                conn.execute(
                    sa.insert(RESPONSE_ANSWERS),
                    [
                        {"response_id": response.response_id, "statement_id": sid, "level": level}
                        for sid, level in response.answers.items()
                    ],
                )
        return response

    def get(self, response_id: str) -> SurveyResponse:
        with self._store._connect() as conn:
            row = self._one(
                conn, sa.select(RESPONSES).where(RESPONSES.c.response_id == response_id), "response"
            )
            answers = self._answers(conn, response_id)
        return self._to_entity(row, answers)

    def exists(self, scenario_id: str, user_id: str) -> bool:
        with self._store._connect() as conn:
            row = conn.execute(
                sa.select(RESPONSES.c.response_id).where(
                    RESPONSES.c.scenario_id == scenario_id, RESPONSES.c.user_id == user_id
                )
            ).first()
        return row is not None

    def list_for_scenario(self, scenario_id: str) -> list[SurveyResponse]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(RESPONSES)
                .where(RESPONSES.c.scenario_id == scenario_id)
                .order_by(RESPONSES.c.seq)
            ).all()
            return [self._to_entity(r, self._answers(conn, r.response_id)) for r in rows]

    def level_counts(self, statement_id: str) -> list[int]:
        """Histogram of levels 1..5 for one statement, straight from storage."""
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(RESPONSE_ANSWERS.c.level, sa.func.count())
                .where(RESPONSE_ANSWERS.c.statement_id == statement_id)
                .group_by(RESPONSE_ANSWERS.c.level)
            ).all()
        counts = [0, 0, 0, 0, 0]
        for level, count in rows:
            counts[level - 1] = count
        return counts

    def count_for_scenario(self, scenario_id: str) -> int:
        with self._store._connect() as conn:
            return conn.execute(
                sa.select(sa.func.count()).where(RESPONSES.c.scenario_id == scenario_id)
            ).scalar_one()

    def distinct_users(self, scenario_id: str) -> set[str]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(RESPONSES.c.user_id.distinct()).where(
                    RESPONSES.c.scenario_id == scenario_id
                )
            ).all()
        return {r[0] for r in rows}

    def latest_activity(self, scenario_id: str) -> datetime | None:
        with self._store._connect() as conn:
            raw = conn.execute(
                sa.select(sa.func.max(RESPONSES.c.submitted_at)).where(
                    RESPONSES.c.scenario_id == scenario_id
                )
            ).scalar_one()
        return parse_rfc3339(raw) if raw else None

    def _answers(self, conn: sa.Connection, response_id: str) -> dict[str, int]:
        rows = conn.execute(
            sa.select(RESPONSE_ANSWERS.c.statement_id, RESPONSE_ANSWERS.c.level).where(
                RESPONSE_ANSWERS.c.response_id == response_id
            )
        ).all()
        return {sid: level for sid, level in rows}

    @staticmethod
    def _to_entity(row: sa.Row, answers: dict[str, int]) -> SurveyResponse:
        return SurveyResponse(
            response_id=row.response_id,
            scenario_id=row.scenario_id,
            user_id=row.user_id,
            answers=answers,
            submitted_at=parse_rfc3339(row.submitted_at),
        )


class VisionRepo(_Repo):
    def create(
        self, scenario_id: str, author: str, image: ImageRef, caption: str, mood: Mood
    ) -> Vision:
        vision = Vision(
            vision_id=self._store.new_id(),
            scenario_id=scenario_id,
            author=author,
            image=image,
            caption=caption,
            mood=mood,
            created_at=self._store.now(),
        )
        with self._store._connect() as conn:
            conn.execute(
                sa.insert(VISIONS).values(
                    vision_id=vision.vision_id,
                    scenario_id=vision.scenario_id,
                    author=vision.author,
                    source_url=image.source_url,
                    thumbnail_url=image.thumbnail_url,
                    attribution=image.attribution,
                    provider_id=image.provider_id,
                    caption=vision.caption,
                    mood=vision.mood.value,
                    created_at=rfc3339(vision.created_at),
                )
            )
        return vision

    def get(self, vision_id: str) -> Vision:
        with self._store._connect() as conn:
            row = self._one(conn, sa.select(VISIONS).where(VISIONS.c.vision_id == vision_id), "vision")
        return self._to_entity(row)

    def paginate(self, scenario_id: str, page: int = 1, page_size: int = 20) -> Page:
        """Reverse-chronological page; ties broken by insertion order."""
        _check_pagination(page, page_size)
        with self._store._connect() as conn:
            total = conn.execute(
                sa.select(sa.func.count()).where(VISIONS.c.scenario_id == scenario_id)
            ).scalar_one()
            rows = conn.execute(
                sa.select(VISIONS)
                .where(VISIONS.c.scenario_id == scenario_id)
                .order_by(VISIONS.c.seq.desc())
                .limit(page_size)
                .offset((page - 1) * page_size)
            ).all()
        return Page(
            items=tuple(self._to_entity(r) for r in rows),
            page=page,
            page_size=page_size,
            total=total,
        )

    def list_for_scenario(self, scenario_id: str) -> list[Vision]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(VISIONS).where(VISIONS.c.scenario_id == scenario_id).order_by(VISIONS.c.seq)
            ).all()
        return [self._to_entity(r) for r in rows]

    def eligible_for(self, user_id: str, scenario_id: str) -> list[Vision]:
        """Visions in the scenario the player neither authored nor already guessed."""
        guessed = sa.select(GUESSES.c.vision_id).where(GUESSES.c.guesser == user_id)
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(VISIONS)
                .where(
                    VISIONS.c.scenario_id == scenario_id,
                    VISIONS.c.author != user_id,
                    VISIONS.c.vision_id.not_in(guessed),
                )
                .order_by(VISIONS.c.seq)
            ).all()
        return [self._to_entity(r) for r in rows]

    def mood_counts(self, scenario_id: str) -> dict[Mood, int]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(VISIONS.c.mood, sa.func.count())
                .where(VISIONS.c.scenario_id == scenario_id)
                .group_by(VISIONS.c.mood)
            ).all()
        counts = {mood: 0 for mood in Mood}
        for mood_value, count in rows:
            counts[Mood(mood_value)] = count
        return counts

    def count_for_scenario(self, scenario_id: str) -> int:
        with self._store._connect() as conn:
            return conn.execute(
                sa.select(sa.func.count()).where(VISIONS.c.scenario_id == scenario_id)
            ).scalar_one()

    def distinct_authors(self, scenario_id: str) -> set[str]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(VISIONS.c.author.distinct()).where(VISIONS.c.scenario_id == scenario_id)
            ).all()
        return {r[0] for r in rows}

    def latest_activity(self, scenario_id: str) -> datetime | None:
        with self._store._connect() as conn:
            raw = conn.execute(
                sa.select(sa.func.max(VISIONS.c.created_at)).where(
                    VISIONS.c.scenario_id == scenario_id
                )
            ).scalar_one()
        return parse_rfc3339(raw) if raw else None

    @staticmethod
    def _to_entity(row: sa.Row) -> Vision:
        return Vision(
            vision_id=row.vision_id,
            scenario_id=row.scenario_id,
            author=row.author,
            image=ImageRef(
                source_url=row.source_url,
                thumbnail_url=row.thumbnail_url,
                attribution=row.attribution,
                provider_id=row.provider_id,
            ),
            caption=row.caption,
            mood=Mood(row.mood),
            created_at=parse_rfc3339(row.created_at),
        )


class GuessRepo(_Repo):
    def create(self, guesser: str, vision: Vision, guessed_mood: Mood, points_awarded: int) -> Guess:
        guess = Guess(
            guess_id=self._store.new_id(),
            guesser=guesser,
            vision_id=vision.vision_id,
            guessed_mood=guessed_mood,
            actual_mood=vision.mood,
            points_awarded=points_awarded,
            created_at=self._store.now(),
        )
        with self._store._connect() as conn:
            conn.execute(
                sa.insert(GUESSES).values(
                    guess_id=guess.guess_id,
                    guesser=guess.guesser,
                    vision_id=guess.vision_id,
                    scenario_id=vision.scenario_id,
                    guessed_mood=guess.guessed_mood.value,
                    actual_mood=guess.actual_mood.value,
                    points_awarded=guess.points_awarded,
                    created_at=rfc3339(guess.created_at),
                )
            )
        return guess

    def get(self, guess_id: str) -> Guess:
        with self._store._connect() as conn:
            row = self._one(conn, sa.select(GUESSES).where(GUESSES.c.guess_id == guess_id), "guess")
        return self._to_entity(row)

    def exists(self, guesser: str, vision_id: str) -> bool:
        with self._store._connect() as conn:
            row = conn.execute(
                sa.select(GUESSES.c.guess_id).where(
                    GUESSES.c.guesser == guesser, GUESSES.c.vision_id == vision_id
                )
            ).first()
        return row is not None

    def list_by_player(self, user_id: str, scenario_id: str) -> list[Guess]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(GUESSES)
                .where(GUESSES.c.guesser == user_id, GUESSES.c.scenario_id == scenario_id)
                .order_by(GUESSES.c.seq)
            ).all()
        return [self._to_entity(r) for r in rows]

    def confusion_counts(self, user_id: str, scenario_id: str) -> dict[tuple[Mood, Mood], int]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(GUESSES.c.actual_mood, GUESSES.c.guessed_mood, sa.func.count())
                .where(GUESSES.c.guesser == user_id, GUESSES.c.scenario_id == scenario_id)
                .group_by(GUESSES.c.actual_mood, GUESSES.c.guessed_mood)
            ).all()
        return {(Mood(actual), Mood(guessed)): count for actual, guessed, count in rows}

    def accuracy_counts(self, scenario_id: str) -> tuple[int, int]:
        """(exact guesses, total guesses) across the whole scenario."""
        with self._store._connect() as conn:
            total = conn.execute(
                sa.select(sa.func.count()).where(GUESSES.c.scenario_id == scenario_id)
            ).scalar_one()
            exact = conn.execute(
                sa.select(sa.func.count()).where(
                    GUESSES.c.scenario_id == scenario_id,
                    GUESSES.c.actual_mood == GUESSES.c.guessed_mood,
                )
            ).scalar_one()
        return exact, total

    def distinct_guessers(self, scenario_id: str) -> set[str]:
        with self._store._connect() as conn:
            rows = conn.execute(
                sa.select(GUESSES.c.guesser.distinct()).where(GUESSES.c.scenario_id == scenario_id)
            ).all()
        return {r[0] for r in rows}

    def latest_activity(self, scenario_id: str) -> datetime | None:
        with self._store._connect() as conn:
            raw = conn.execute(
                sa.select(sa.func.max(GUESSES.c.created_at)).where(
                    GUESSES.c.scenario_id == scenario_id
                )
            ).scalar_one()
        return parse_rfc3339(raw) if raw else None

    @staticmethod
    def _to_entity(row: sa.Row) -> Guess:
        return Guess(
            guess_id=row.guess_id,
            guesser=row.guesser,
            vision_id=row.vision_id,
            guessed_mood=Mood(row.guessed_mood),
            actual_mood=Mood(row.actual_mood),
            points_awarded=row.points_awarded,
            created_at=parse_rfc3339(row.created_at),
        )


class StatsRepo(_Repo):
    def get(self, user_id: str, scenario_id: str) -> PlayerStats | None:
        with self._store._connect() as conn:
            row = conn.execute(
                sa.select(PLAYER_STATS).where(
                    PLAYER_STATS.c.user_id == user_id, PLAYER_STATS.c.scenario_id == scenario_id
                )
            ).first()
        if row is None:
            return None
        return PlayerStats(
            user_id=row.user_id,
            scenario_id=row.scenario_id,
            total_points=row.total_points,
            guesses_made=row.guesses_made,
            exact_matches=row.exact_matches,
            current_streak=row.current_streak,
        )

    def put(self, stats: PlayerStats) -> PlayerStats:
        """Upsert; update-then-insert is safe under the store's write serialization."""
        with self._store._connect() as conn:
            result = conn.execute(
                sa.update(PLAYER_STATS)
                .where(
                    PLAYER_STATS.c.user_id == stats.user_id,
                    PLAYER_STATS.c.scenario_id == stats.scenario_id,
                )
                .values(
                    total_points=stats.total_points,
                    guesses_made=stats.guesses_made,
                    exact_matches=stats.exact_matches,
                    current_streak=stats.current_streak,
                )
            )
            if result.rowcount == 0:
                conn.execute(
                    sa.insert(PLAYER_STATS).values(
                        user_id=stats.user_id,
                        scenario_id=stats.scenario_id,
                        total_points=stats.total_points,
                        guesses_made=stats.guesses_made,
                        exact_matches=stats.exact_matches,
                        current_streak=stats.current_streak,
                    )
                )
        return stats
