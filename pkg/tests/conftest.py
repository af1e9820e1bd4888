import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def _to_state(raw):
    v = np.asarray(raw[0::2], dtype=float) + 1j * np.asarray(raw[1::2], dtype=float)
    return v / np.linalg.norm(v)


@st.composite
def states(draw, dim=None, min_dim=2, max_dim=6):
    """Normalized complex vectors built from bounded floats, away from the zero vector."""
    d = dim if dim is not None else draw(st.integers(min_dim, max_dim))
    raw = draw(
        st.lists(st.floats(-1.0, 1.0, allow_nan=False, width=64), min_size=2 * d, max_size=2 * d)
        .filter(lambda xs: np.linalg.norm(xs) > 1e-3)
    )
    return _to_state(raw)


@st.composite
def state_pairs(draw, min_dim=2, max_dim=6, count=2):
    d = draw(st.integers(min_dim, max_dim))
    return tuple(draw(states(dim=d)) for _ in range(count))


phases = st.floats(0.0, 2 * np.pi, allow_nan=False)
