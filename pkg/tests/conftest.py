import numpy as np
import pytest

from hcpoly.algebra import OCTONIONS, QUATERNIONS


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(params=[QUATERNIONS, OCTONIONS], ids=["H", "O"])
def algebra(request):
    return request.param
