import numpy as np
import pytest

from ulrich.polyring import VarSpec, parse_poly


@pytest.fixture
def plane():
    return VarSpec(('x', 'y', 'z'))


@pytest.fixture
def poly(plane):
    """parse over x, y, z unless a VarSpec is given"""
    def _poly(text, varspec=None, D=1):
        return parse_poly(text, varspec or plane, D)
    return _poly


@pytest.fixture
def rng():
    return np.random.default_rng(0)
