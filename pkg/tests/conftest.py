import random

import pytest
from hypothesis import strategies as st

from bulbs.wiring import Wiring

FIXTURES = __import__("pathlib").Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@st.composite
def wirings(draw, max_n=8, admissible=True):
    n = draw(st.integers(1, max_n))
    cols = [draw(st.integers(0, (1 << n) - 1)) for _ in range(n)]
    if admissible:
        cols = [c | (1 << j) for j, c in enumerate(cols)]
    return Wiring.from_columns(n, cols)


def random_admissible(rng: random.Random, n: int, m: int | None = None) -> Wiring:
    """Admissible wiring with every column weight at most ``m``."""
    m = n if m is None else m
    cols = []
    for j in range(n):
        others = [i for i in range(n) if i != j]
        extra = rng.sample(others, rng.randint(0, min(m, n) - 1))
        cols.append((1 << j) | sum(1 << i for i in extra))
    return Wiring.from_columns(n, cols)
