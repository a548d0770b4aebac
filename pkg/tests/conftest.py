import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def upper_half_plane(draw, re=(-2.0, 2.0), im=(0.2, 3.0)):
    x = draw(st.floats(*re, allow_nan=False, allow_infinity=False))
    y = draw(st.floats(*im, allow_nan=False, allow_infinity=False))
    return complex(x, y)


@st.composite
def modular_words(draw, max_length=5):
    from berezinlab.halfplane import MoebiusTransform
    g = MoebiusTransform.identity()
    for n in draw(st.lists(st.integers(-3, 3), min_size=1, max_size=max_length)):
        g = g.compose(MoebiusTransform(1, n, 0, 1)).compose(MoebiusTransform(0, -1, 1, 0))
    return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log(capsys):
    """Print a criterion line immediately (uncaptured) and keep it for the session summary."""
    def log(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line, flush=True)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
