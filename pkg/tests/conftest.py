import math

import numpy as np
import pytest
from hypothesis import strategies as st

from hilbert_decision import make_state

SCENARIOS = __import__("pathlib").Path(__file__).resolve().parent.parent / "docs" / "scenarios"

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def states(draw, dim=None, max_dim=8):
    n = dim if dim is not None else draw(st.integers(1, max_dim))
    re = draw(st.lists(finite, min_size=n, max_size=n))
    im = draw(st.lists(finite, min_size=n, max_size=n))
    amps = np.array(re) + 1j * np.array(im)
    if np.linalg.norm(amps) < 1e-3:
        amps = np.zeros(n, dtype=complex)
        amps[draw(st.integers(0, n - 1))] = 1.0
    return make_state(amps)


@st.composite
def state_pairs(draw, max_dim=8):
    n = draw(st.integers(1, max_dim))
    return draw(states(n)), draw(states(n))


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
phase = st.floats(min_value=0.0, max_value=math.pi, allow_nan=False)


@pytest.fixture
def scenarios_dir():
    return SCENARIOS
