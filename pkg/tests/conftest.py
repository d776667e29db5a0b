import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=25, deadline=None)
settings.load_profile("ci")


def rand_hermitian(dim: int, seed: int) -> np.ndarray:
    """General (not PSD) random Hermitian matrix."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


def max_abs(a) -> float:
    return float(np.abs(np.asarray(a)).max())


@pytest.fixture
def example1_quarter():
    from alphaz.states import example1_pair

    return example1_pair(0.25)
