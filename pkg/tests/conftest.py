import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from petaluma.petal_model import PetalPermutation

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def perms(p):
    return st.permutations(range(1, p + 1)).map(lambda h: PetalPermutation(tuple(h)))


def odd_perms(min_p=3, max_p=9):
    return st.sampled_from(range(min_p, max_p + 1, 2)).flatmap(perms)


@pytest.fixture
def results_file(tmp_path, monkeypatch):
    path = tmp_path / "results.ndjson"
    monkeypatch.setenv("PETALUMA_RESULTS", str(path))
    return path


_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s[7:9])):
            terminalreporter.write_line(line)
