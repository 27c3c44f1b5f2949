from decimal import ROUND_HALF_UP, Decimal

import numpy as np
import pytest
from hypothesis import strategies as st

from zrisk.fuzzy import TFN
from zrisk.scales import RATING, RELIABILITY
from zrisk.validation import RatingJudgment

RATING_CODES = RATING.codes
RELIABILITY_CODES = RELIABILITY.codes


def round_half_up(x: float, places: int = 2) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def centroid_by_trapezoid(t: TFN, n: int = 100_001) -> float:
    """Centre of area by trapezoid-rule integration of the membership function."""
    if t.c == t.a:
        return t.a
    y = np.linspace(t.a, t.c, n)
    mu = np.zeros_like(y)
    if t.b > t.a:
        left = y <= t.b
        mu[left] = (y[left] - t.a) / (t.b - t.a)
    if t.c > t.b:
        right = y >= t.b
        mu[right] = (t.c - y[right]) / (t.c - t.b)
    if t.b == t.a:
        mu[0] = 1.0
    if t.b == t.c:
        mu[-1] = 1.0
    return float(np.trapezoid(y * mu, y) / np.trapezoid(mu, y))


@st.composite
def tfns(draw, lo=0.0, hi=10.0):
    xs = sorted(draw(st.lists(st.floats(lo, hi, allow_nan=False), min_size=3, max_size=3)))
    return TFN(*xs)


def random_tfn(rng, lo=0.0, hi=10.0) -> TFN:
    return TFN(*np.sort(rng.uniform(lo, hi, 3)))


def random_panel(rng, m, n, experts=1, dominant=None):
    """Random rating judgments; row ``dominant`` gets, per expert and
    criterion, the highest rating and reliability index seen in that column."""
    rating = rng.integers(0, len(RATING_CODES), size=(experts, m, n))
    rel = rng.integers(0, len(RELIABILITY_CODES), size=(experts, m, n))
    if dominant is not None:
        rating[:, dominant, :] = rating.max(axis=1)
        rel[:, dominant, :] = rel.max(axis=1)
    out = []
    for e in range(experts):
        for i in range(m):
            for j in range(n):
                out.append(RatingJudgment(f"E{e + 1}", f"A{i + 1}", f"C{j + 1}",
                                          RATING_CODES[rating[e, i, j]], RELIABILITY_CODES[rel[e, i, j]]))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
