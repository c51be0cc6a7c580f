"""Image search: query bounds, stub determinism, caching, and provider error mapping."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

import pytest

from civicmood.errors import InvalidQuery, ProviderUnavailable, RateLimited
from civicmood.images import (
    HttpImageProvider,
    ImageSearch,
    ImageSearchQuery,
    StubImageProvider,
)


class TestQueryBounds:
    def test_empty_keywords_rejected(self):
        with pytest.raises(InvalidQuery):
            ImageSearchQuery(keywords="")
        with pytest.raises(InvalidQuery):
            ImageSearchQuery(keywords="   ")

    def test_keyword_length_cap(self):
        with pytest.raises(InvalidQuery):
            ImageSearchQuery(keywords="x" * 101)

    def test_per_page_bounds(self):
        with pytest.raises(InvalidQuery):
            ImageSearchQuery(keywords="ok", per_page=0)
        with pytest.raises(InvalidQuery):
            ImageSearchQuery(keywords="ok", per_page=31)

    def test_page_bound(self):
        with pytest.raises(InvalidQuery):
            ImageSearchQuery(keywords="ok", page=0)

    def test_bounds_enforced_before_any_provider_call(self):
        stub = StubImageProvider()
        client = ImageSearch(stub)
        with pytest.raises(InvalidQuery):
            client.search_images(ImageSearchQuery(keywords="", per_page=2))
        assert stub.calls == 0


class TestStubProvider:
    def test_results_with_attribution(self):
        page = StubImageProvider().search(ImageSearchQuery(keywords="city park", per_page=2))
        assert len(page.results) == 2
        assert all(ref.attribution for ref in page.results)
        assert all(ref.source_url.startswith("https://") for ref in page.results)

    def test_deterministic(self):
        query = ImageSearchQuery(keywords="city park", page=2, per_page=5)
        assert StubImageProvider().search(query) == StubImageProvider().search(query)

    def test_pages_do_not_overlap(self):
        p1 = StubImageProvider().search(ImageSearchQuery(keywords="river", page=1, per_page=4))
        p2 = StubImageProvider().search(ImageSearchQuery(keywords="river", page=2, per_page=4))
        assert not {r.provider_id for r in p1.results} & {r.provider_id for r in p2.results}

    def test_forced_503(self):
        provider = StubImageProvider(fail_status=503)
        with pytest.raises(ProviderUnavailable):
            provider.search(ImageSearchQuery(keywords="anything"))

    def test_forced_429_carries_retry_after(self):
        provider = StubImageProvider(fail_status=429, retry_after_seconds=12)
        with pytest.raises(RateLimited) as exc:
            provider.search(ImageSearchQuery(keywords="anything"))
        assert exc.value.retry_after_seconds == 12


class TestCache:
    def test_identical_queries_hit_cache(self):
        stub = StubImageProvider()
        client = ImageSearch(stub, ttl_seconds=900)
        query = ImageSearchQuery(keywords="park bench", per_page=3)
        first = client.search_images(query)
        second = client.search_images(query)
        assert stub.calls == 1
        assert first == second

    def test_distinct_queries_miss(self):
        stub = StubImageProvider()
        client = ImageSearch(stub, ttl_seconds=900)
        client.search_images(ImageSearchQuery(keywords="park"))
        client.search_images(ImageSearchQuery(keywords="park", page=2))
        assert stub.calls == 2

    def test_ttl_expiry_refetches(self):
        stub = StubImageProvider()
        fake_time = [0.0]
        client = ImageSearch(stub, ttl_seconds=10, clock=lambda: fake_time[0])
        query = ImageSearchQuery(keywords="harbor")
        client.search_images(query)
        fake_time[0] = 11.0
        client.search_images(query)
        assert stub.calls == 2

    def test_errors_are_not_cached(self):
        stub = StubImageProvider(fail_status=503)
        client = ImageSearch(stub, ttl_seconds=900)
        query = ImageSearchQuery(keywords="harbor")
        with pytest.raises(ProviderUnavailable):
            client.search_images(query)
        stub.fail_status = None
        page = client.search_images(query)
        assert len(page.results) == query.per_page


class _CannedHandler(BaseHTTPRequestHandler):
    responses: list[tuple[int, dict, dict]] = []  # (status, headers, body)
    seen: list[dict] = []

    def do_GET(self):
        params = {k: v[0] for k, v in parse_qs(urlparse(self.path).query).items()}
        _CannedHandler.seen.append(params)
        status, headers, body = _CannedHandler.responses.pop(0)
        payload = json.dumps(body).encode()
        self.send_response(status)
        for key, value in headers.items():
            self.send_header(key, value)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture
def canned_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _CannedHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    _CannedHandler.responses = []
    _CannedHandler.seen = []
    yield f"http://127.0.0.1:{server.server_port}/search", _CannedHandler
    server.shutdown()


class TestHttpProvider:
    def test_maps_payload(self, canned_server):
        url, handler = canned_server
        handler.responses.append(
            (
                200,
                {},
                {
                    "total": 57,
                    "results": [
                        {
                            "url": "https://cdn.test/a.jpg",
                            "thumbnail_url": "https://cdn.test/a-t.jpg",
                            "attribution": "Someone / Provider",
                            "id": "a1",
                        }
                    ],
                },
            )
        )
        page = HttpImageProvider(url).search(ImageSearchQuery(keywords="dog", per_page=5))
        assert page.total_available == 57
        assert len(page.results) == 1
        assert page.results[0].attribution == "Someone / Provider"
        assert handler.seen[0]["keywords"] == "dog"

    def test_outbound_per_page_never_exceeds_30(self, canned_server):
        url, handler = canned_server
        handler.responses.append((200, {}, {"total": 0, "results": []}))
        HttpImageProvider(url).search(ImageSearchQuery(keywords="dog", per_page=30))
        assert int(handler.seen[0]["per_page"]) <= 30

    def test_malformed_entries_dropped(self, canned_server):
        url, handler = canned_server
        handler.responses.append(
            (
                200,
                {},
                {
                    "total": 4,
                    "results": [
                        {"url": "not a url", "id": "bad1"},
                        "just-a-string",
                        {"id": "no-url-at-all"},
                        {"url": "https://cdn.test/ok.jpg", "id": "ok"},
                    ],
                },
            )
        )
        page = HttpImageProvider(url).search(ImageSearchQuery(keywords="cat"))
        assert [r.provider_id for r in page.results] == ["ok"]

    def test_5xx_maps_to_provider_unavailable(self, canned_server):
        url, handler = canned_server
        handler.responses.append((503, {}, {}))
        with pytest.raises(ProviderUnavailable):
            HttpImageProvider(url).search(ImageSearchQuery(keywords="cat"))

    def test_429_maps_to_rate_limited(self, canned_server):
        url, handler = canned_server
        handler.responses.append((429, {"Retry-After": "7"}, {}))
        with pytest.raises(RateLimited) as exc:
            HttpImageProvider(url).search(ImageSearchQuery(keywords="cat"))
        assert exc.value.retry_after_seconds == 7

    def test_400_maps_to_invalid_query(self, canned_server):
        url, handler = canned_server
        handler.responses.append((400, {}, {}))
        with pytest.raises(InvalidQuery):
            HttpImageProvider(url).search(ImageSearchQuery(keywords="cat"))

    def test_unreachable_host(self):
        provider = HttpImageProvider("http://127.0.0.1:1/search", timeout=0.2)
        with pytest.raises(ProviderUnavailable):
            provider.search(ImageSearchQuery(keywords="cat"))
