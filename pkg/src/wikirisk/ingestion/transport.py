"""HTTP plumbing: transports, per-host throttling, retries, telemetry.

The client serializes request spacing per host, bounds in-flight
requests per host, retries retryable failures with exponential backoff
(honoring Retry-After on 429), and keeps telemetry so a retried success
stays distinguishable from a first-try success only there.
"""

from __future__ import annotations

import json
import threading
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Protocol
from urllib.parse import urlencode, urlsplit, parse_qsl

from .errors import NetworkError, NotRecordedError, ParseError
from .policy import Clock, FetchPolicy, SystemClock

RETRYABLE_STATUSES = frozenset({429, 500, 502, 503, 504})


@dataclass(frozen=True)
class HttpResponse:
    status: int
    body: bytes
    headers: Mapping[str, str]
    url: str

    def header(self, name: str) -> Optional[str]:
        return self.headers.get(name.lower())

    def json(self) -> Any:
        try:
            return json.loads(self.body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ParseError(f"response from {self.url} is not JSON: {exc}") from exc


class Transport(Protocol):
    def send(self, method: str, url: str, headers: Mapping[str, str], timeout: float) -> HttpResponse: ...


class RequestsTransport:
    """Live transport over a pooled requests session."""

    def __init__(self) -> None:
        import requests

        self._session = requests.Session()
        self._requests = requests

    def send(self, method: str, url: str, headers: Mapping[str, str], timeout: float) -> HttpResponse:
        try:
            resp = self._session.request(method, url, headers=dict(headers), timeout=timeout)
        except self._requests.RequestException as exc:
            raise NetworkError(f"{method} {url}: {exc}") from exc
        return HttpResponse(
            status=resp.status_code,
            body=resp.content,
            headers={k.lower(): v for k, v in resp.headers.items()},
            url=url,
        )


def canonical_url(url: str) -> str:
    """URL with query parameters sorted; the replay index key."""
    parts = urlsplit(url)
    query = urlencode(sorted(parse_qsl(parts.query, keep_blank_values=True)))
    rebuilt = f"{parts.scheme}://{parts.netloc}{parts.path}"
    return f"{rebuilt}?{query}" if query else rebuilt


class ReplayTransport:
    """Replays a recorded corpus of {request.json, response.body, response.status} triples.

    Triples live one per subdirectory; subdirectory name order is the
    recording order.  Repeated requests for the same URL consume the
    recorded responses in order and then stick at the last one, which is
    how a recorded 503,503,200 sequence drives the retry path.
    """

    def __init__(self, root: Path) -> None:
        self.root = Path(root)
        self._index: dict[tuple[str, str], deque[HttpResponse]] = {}
        self._lock = threading.Lock()
        for req_path in sorted(self.root.glob("**/request.json")):
            triple_dir = req_path.parent
            request = json.loads(req_path.read_text())
            method = str(request.get("method", "GET")).upper()
            url = canonical_url(str(request["url"]))
            body = (triple_dir / "response.body").read_bytes()
            status = int((triple_dir / "response.status").read_text().strip())
            headers_path = triple_dir / "response.headers.json"
            headers: dict[str, str] = {}
            if headers_path.exists():
                headers = {
                    k.lower(): str(v) for k, v in json.loads(headers_path.read_text()).items()
                }
            response = HttpResponse(status=status, body=body, headers=headers, url=url)
            self._index.setdefault((method, url), deque()).append(response)

    def send(self, method: str, url: str, headers: Mapping[str, str], timeout: float) -> HttpResponse:
        key = (method.upper(), canonical_url(url))
        with self._lock:
            queue = self._index.get(key)
            if not queue:
                raise NotRecordedError(f"no recorded response for {method} {url}")
            if len(queue) > 1:
                return queue.popleft()
            return queue[0]


@dataclass
class Telemetry:
    """Counters the retry machinery writes; the only place retries show up."""

    requests: int = 0
    retries: int = 0
    rate_limit_waits: int = 0
    last_retry_count: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def record_request(self, retries: int) -> None:
        with self._lock:
            self.requests += 1
            self.retries += retries
            self.last_retry_count = retries

    def record_wait(self) -> None:
        with self._lock:
            self.rate_limit_waits += 1


class _HostThrottle:
    """Spacing plus in-flight bound for one upstream host."""

    def __init__(self, policy: FetchPolicy) -> None:
        self.semaphore = threading.BoundedSemaphore(policy.max_in_flight)
        self.lock = threading.Lock()
        self.next_allowed = 0.0


class HttpClient:
    """Policy-enforcing GET client shared by all fetchers."""

    def __init__(
        self,
        transport: Transport,
        policy: Optional[FetchPolicy] = None,
        clock: Optional[Clock] = None,
    ) -> None:
        self.transport = transport
        self.policy = policy or FetchPolicy()
        self.clock: Clock = clock or SystemClock()
        self.telemetry = Telemetry()
        self._throttles: dict[str, _HostThrottle] = {}
        self._throttles_lock = threading.Lock()

    def _throttle_for(self, host: str) -> _HostThrottle:
        with self._throttles_lock:
            throttle = self._throttles.get(host)
            if throttle is None:
                throttle = _HostThrottle(self.policy)
                self._throttles[host] = throttle
            return throttle

    def _pace(self, throttle: _HostThrottle) -> None:
        # Sleeping inside the lock is what serializes spacing per host.
        with throttle.lock:
            now = self.clock.monotonic()
            wait = throttle.next_allowed - now
            if wait > 0:
                self.telemetry.record_wait()
                self.clock.sleep(wait)
                now = throttle.next_allowed
            throttle.next_allowed = now + self.policy.min_request_interval

    @staticmethod
    def _retry_after(response: HttpResponse) -> Optional[float]:
        raw = response.header("retry-after")
        if raw is None:
            return None
        try:
            return max(0.0, float(raw))
        except ValueError:
            return None  # HTTP-date form: fall back to the backoff schedule

    def get(self, url: str, params: Optional[Mapping[str, str]] = None) -> HttpResponse:
        """GET with throttling and retries; returns the final response.

        Non-retryable statuses (e.g. 404) come back to the caller as-is;
        exhausting retries on a retryable failure raises NetworkError.
        """
        if params:
            url = f"{url}?{urlencode(sorted(params.items()))}"
        host = urlsplit(url).netloc
        throttle = self._throttle_for(host)
        headers = {"user-agent": self.policy.user_agent, "accept": "application/json"}
        retries = 0
        last_error: Optional[NetworkError] = None
        while True:
            self._pace(throttle)
            throttle.semaphore.acquire()
            try:
                response: Optional[HttpResponse] = self.transport.send(
                    "GET", url, headers, self.policy.timeout
                )
                last_error = None
            except NetworkError as exc:
                response = None
                last_error = exc
            finally:
                throttle.semaphore.release()

            if response is not None and response.status not in RETRYABLE_STATUSES:
                self.telemetry.record_request(retries)
                return response

            if retries >= self.policy.max_retries:
                self.telemetry.record_request(retries)
                if last_error is not None:
                    raise NetworkError(f"GET {url}: gave up after {retries} retries") from last_error
                raise NetworkError(
                    f"GET {url}: status {response.status} persisted after {retries} retries"
                )

            delay = self.policy.backoff.delay(retries)
            if response is not None and response.status == 429:
                server_delay = self._retry_after(response)
                if server_delay is not None:
                    delay = server_delay
            retries += 1
            self.clock.sleep(delay)

    def get_json(self, url: str, params: Optional[Mapping[str, str]] = None) -> Any:
        response = self.get(url, params)
        if response.status >= 400:
            raise NetworkError(f"GET {response.url}: unexpected status {response.status}")
        return response.json()
