import numpy as np
import pytest

from helpers import make_params


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)


@pytest.fixture
def base_params():
    """A stable, entangled operating point."""
    p = make_params()
    return p.replace(
        T=0.1e-3,
        r=1.5,
        lam=0.2 * p.Gamma,
        alpha=0.0015 * p.Gamma,
        beta=0.0002 * p.Gamma,
    )
