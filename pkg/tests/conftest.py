import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ddqc import Graph, from_degree_sequence

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_log():
    def record(name: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0].split()[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}  {detail}")


def triangle() -> Graph:
    return Graph.from_edges([(0, 1), (1, 2), (2, 0)])


def star4() -> Graph:
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 4)])


def k4() -> Graph:
    return Graph.from_edges([(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def star_dd():
    return from_degree_sequence([4, 1, 1, 1, 1])


@pytest.fixture
def triangle_dd():
    return from_degree_sequence([2, 2, 2])


@pytest.fixture
def k4_dd():
    return from_degree_sequence([3, 3, 3, 3])


def random_degree_sequence(rng: np.random.Generator, max_len: int = 10_000, max_deg: int = 10_000) -> np.ndarray:
    """Mixed-shape random sequences: uniform, heavy-tailed, few distinct values."""
    n = int(rng.integers(1, max_len + 1))
    top = int(rng.integers(0, max_deg + 1))
    kind = rng.integers(0, 3)
    if kind == 0:
        seq = rng.integers(0, top + 1, size=n)
    elif kind == 1:
        seq = np.minimum(rng.zipf(2.0 + rng.random(), size=n) - 1, top)
    else:
        values = rng.integers(0, top + 1, size=int(rng.integers(1, 5)))
        seq = rng.choice(values, size=n)
    return seq.astype(np.int64)
