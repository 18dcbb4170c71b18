import datetime as dt
import json
from collections import deque
from pathlib import Path

import pytest

from wikirisk.ingestion import FetchPolicy, HttpClient, ReplayTransport, load_fixture_snapshot
from wikirisk.ingestion.errors import NetworkError
from wikirisk.ingestion.fixtures import bundled_fixture_dir, list_fixture_snapshots
from wikirisk.ingestion.transport import HttpResponse

TESTS_DIR = Path(__file__).parent
RECORDED_DIR = TESTS_DIR / "data" / "recorded"
GOLDEN_DIR = TESTS_DIR / "data" / "golden"
WINDOW_LABEL = "2021-02..2021-05"


class FakeClock:
    """Deterministic clock: sleep() advances monotonic time instantly."""

    def __init__(self, start: float = 1000.0) -> None:
        self.now = start
        self.sleeps: list[float] = []
        self.epoch = dt.datetime(2021, 5, 2, 6, 0, 0, tzinfo=dt.timezone.utc)

    def monotonic(self) -> float:
        return self.now

    def sleep(self, seconds: float) -> None:
        self.sleeps.append(seconds)
        self.now += seconds

    def utcnow(self) -> dt.datetime:
        # Fixed wall time: captured_at in replay tests must not depend on
        # how many paced requests preceded it.
        return self.epoch


class ScriptedTransport:
    """Serves a scripted queue of responses (or exceptions) per URL, then sticks at the last."""

    def __init__(self) -> None:
        self.scripts: dict[str, deque] = {}
        self.log: list[str] = []

    def script(self, url: str, *outcomes) -> None:
        self.scripts[url] = deque(outcomes)

    def send(self, method, url, headers, timeout):
        self.log.append(url)
        queue = self.scripts.get(url)
        if queue is None:
            raise NetworkError(f"unscripted url: {url}")
        outcome = queue.popleft() if len(queue) > 1 else queue[0]
        if isinstance(outcome, Exception):
            raise outcome
        return outcome


def response(status: int = 200, payload=None, headers=None, url: str = "scripted://") -> HttpResponse:
    body = json.dumps(payload if payload is not None else {}).encode()
    return HttpResponse(status=status, body=body, headers=headers or {}, url=url)


@pytest.fixture
def fake_clock() -> FakeClock:
    return FakeClock()


@pytest.fixture
def scripted() -> ScriptedTransport:
    return ScriptedTransport()


@pytest.fixture
def replay_client(fake_clock) -> HttpClient:
    transport = ReplayTransport(RECORDED_DIR)
    policy = FetchPolicy(min_request_interval=0.1, max_retries=2, user_agent="tests")
    return HttpClient(transport, policy, clock=fake_clock)


@pytest.fixture(scope="session")
def bundled_snapshots():
    return [load_fixture_snapshot(p) for p in list_fixture_snapshots(bundled_fixture_dir())]
