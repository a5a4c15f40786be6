import numpy as np
import pytest

from generic_erasure.codes import repetition_code
from generic_erasure.gf2 import BitVec

EXAMPLE1 = ["10001", "01100", "01111", "01010"]


@pytest.fixture
def example1():
    """The four-check collection on the [5,1] repetition code, in its listed order."""
    return [BitVec.from_str(s) for s in EXAMPLE1]


@pytest.fixture
def rep5():
    return repetition_code(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20061018)
