"""Keyword image search for vision creation.

Two providers sit behind one interface: a real HTTP provider (configured via
PROVIDER_BASE_URL / PROVIDER_API_KEY) and a deterministic in-process stub so
the platform runs with no credentials. A small TTL cache in front protects
demo usage from provider rate limits.
"""

from __future__ import annotations

import hashlib
import threading
import time
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Protocol

import requests

from .domain import ImageRef
from .errors import InvalidQuery, ProviderUnavailable, RateLimited

KEYWORDS_MAX = 100
PER_PAGE_MAX = 30
DEFAULT_PER_PAGE = 20
DEFAULT_CACHE_TTL_SECONDS = 900  # 15 minutes
HTTP_TIMEOUT_SECONDS = 10


@dataclass(frozen=True)
class ImageSearchQuery:
    keywords: str
    page: int = 1
    per_page: int = DEFAULT_PER_PAGE

    def __post_init__(self) -> None:
        # Bounds are enforced here, before any network call can happen.
        if not isinstance(self.keywords, str) or not self.keywords.strip():
            raise InvalidQuery("keywords must be non-empty")
        if len(self.keywords) > KEYWORDS_MAX:
            raise InvalidQuery(f"keywords must be at most {KEYWORDS_MAX} characters")
        if self.page < 1:
            raise InvalidQuery("page starts at 1", page=self.page)
        if not 1 <= self.per_page <= PER_PAGE_MAX:
            raise InvalidQuery(f"per_page must be 1-{PER_PAGE_MAX}", per_page=self.per_page)

    @property
    def cache_key(self) -> tuple[str, int, int]:
        return (self.keywords.strip().lower(), self.page, self.per_page)


@dataclass(frozen=True)
class ImagePage:
    results: tuple[ImageRef, ...]
    page: int
    total_available: int | None  # None when the provider does not report it

    def to_dict(self) -> dict[str, Any]:
        return {
            "results": [ref.to_dict() for ref in self.results],
            "page": self.page,
            "total_available": self.total_available,
        }


class ImageProvider(Protocol):
    def search(self, query: ImageSearchQuery) -> ImagePage: ...


_STUB_SUBJECTS = [
    "skyline", "park", "bicycle", "market", "river", "library", "tram",
    "playground", "mural", "harbor", "garden", "bridge",
]
_STUB_CREATORS = ["Ada Raines", "Milo Veen", "Juno Parks", "Iris Kamp", "Theo Lindt"]


class StubImageProvider:
    """Deterministic offline provider for tests and demo mode.

    ``fail_status`` forces the error path: 503 behaves like a provider outage,
    429 like a rate limit.
    """

    def __init__(self, fail_status: int | None = None, retry_after_seconds: int = 30) -> None:
        self.fail_status = fail_status
        self.retry_after_seconds = retry_after_seconds
        self.calls = 0

    def search(self, query: ImageSearchQuery) -> ImagePage:
        self.calls += 1
        if self.fail_status == 429:
            raise RateLimited(
                "stub provider rate limit", retry_after_seconds=self.retry_after_seconds
            )
        if self.fail_status is not None:
            raise ProviderUnavailable(f"stub provider returned HTTP {self.fail_status}")
        slug = "-".join(query.keywords.strip().lower().split())
        results = []
        for i in range(query.per_page):
            ordinal = (query.page - 1) * query.per_page + i
            digest = hashlib.sha256(f"{slug}:{ordinal}".encode()).hexdigest()
            subject = _STUB_SUBJECTS[int(digest[:8], 16) % len(_STUB_SUBJECTS)]
            creator = _STUB_CREATORS[int(digest[8:16], 16) % len(_STUB_CREATORS)]
            results.append(
                ImageRef(
                    source_url=f"https://images.stub.local/{slug}/{subject}-{digest[:12]}.jpg",
                    thumbnail_url=f"https://images.stub.local/{slug}/{subject}-{digest[:12]}-thumb.jpg",
                    attribution=f"{creator} / Stub Images",
                    provider_id=f"stub-{digest[:16]}",
                )
            )
        total = 60 + int(hashlib.sha256(slug.encode()).hexdigest()[:4], 16) % 240
        return ImagePage(results=tuple(results), page=query.page, total_available=total)


class HttpImageProvider:
    """Provider speaking a plain JSON-over-GET contract.

    Expected response shape: ``{"total": int|null, "results": [{"url", ...}]}``.
    Entries that do not yield a valid ImageRef are dropped, never propagated.
    """

    def __init__(
        self,
        base_url: str,
        api_key: str = "",
        timeout: float = HTTP_TIMEOUT_SECONDS,
        session: requests.Session | None = None,
    ) -> None:
        self.base_url = base_url
        self.api_key = api_key
        self.timeout = timeout
        self._session = session or requests.Session()

    def search(self, query: ImageSearchQuery) -> ImagePage:
        params = {
            "keywords": query.keywords.strip(),
            "page": query.page,
            "per_page": min(query.per_page, PER_PAGE_MAX),
        }
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        try:
            response = self._session.get(
                self.base_url, params=params, headers=headers, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ProviderUnavailable(f"image provider unreachable: {exc}") from exc
        if response.status_code == 429:
            retry_after = _parse_retry_after(response.headers.get("Retry-After"))
            raise RateLimited("image provider rate limit", retry_after_seconds=retry_after)
        if response.status_code >= 500:
            raise ProviderUnavailable(f"image provider returned HTTP {response.status_code}")
        if response.status_code >= 400:
            raise InvalidQuery(f"image provider rejected the query (HTTP {response.status_code})")
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProviderUnavailable("image provider returned invalid JSON") from exc
        return _map_payload(payload, query)


def _parse_retry_after(raw: str | None) -> int:
    try:
        return max(0, int(raw))  # type: ignore[arg-type]
    except (TypeError, ValueError):
        return 60


def _map_payload(payload: Any, query: ImageSearchQuery) -> ImagePage:
    entries = payload.get("results", []) if isinstance(payload, Mapping) else []
    results: list[ImageRef] = []
    for entry in entries:
        if len(results) >= query.per_page:
            break
        if not isinstance(entry, Mapping):
            continue
        url = entry.get("url") or entry.get("source_url")
        thumb = entry.get("thumbnail_url") or entry.get("thumb") or url
        attribution = str(entry.get("attribution") or entry.get("creator") or "")[:200]
        provider_id = str(entry.get("id") or entry.get("provider_id") or "")
        try:
            results.append(
                ImageRef(
                    source_url=str(url),
                    thumbnail_url=str(thumb),
                    attribution=attribution,
                    provider_id=provider_id,
                )
            )
        except Exception:
            continue  # malformed entry: drop it
    total = payload.get("total") if isinstance(payload, Mapping) else None
    total_available = int(total) if isinstance(total, int) and total >= 0 else None
    return ImagePage(results=tuple(results), page=query.page, total_available=total_available)


@dataclass
class _CacheEntry:
    expires_at: float
    page: ImagePage


class ImageSearch:
    """Caching front over a provider; safe to share across request handlers.

    Concurrent misses on the same key may each call the provider (accepted
    trade-off; the cache is a shield, not a lock).
    """

    def __init__(
        self,
        provider: ImageProvider,
        ttl_seconds: float = DEFAULT_CACHE_TTL_SECONDS,
        clock: Callable[[], float] = time.monotonic,
    ) -> None:
        self.provider = provider
        self.ttl_seconds = ttl_seconds
        self._clock = clock
        self._cache: dict[tuple[str, int, int], _CacheEntry] = {}
        self._lock = threading.Lock()

    def search_images(self, query: ImageSearchQuery) -> ImagePage:
        now = self._clock()
        if self.ttl_seconds > 0:
            with self._lock:
                entry = self._cache.get(query.cache_key)
                if entry is not None and entry.expires_at > now:
                    return entry.page
        page = self.provider.search(query)
        if self.ttl_seconds > 0:
            with self._lock:
                self._cache[query.cache_key] = _CacheEntry(now + self.ttl_seconds, page)
                self._evict(now)
        return page

    def _evict(self, now: float) -> None:
        expired = [key for key, entry in self._cache.items() if entry.expires_at <= now]
        for key in expired:
            del self._cache[key]
