import numpy as np
import pytest

from attrmetric import AttributeMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_attrs(rng, n, k):
    return AttributeMatrix((rng.integers(0, 2, size=(n, k)) * 2 - 1).astype(np.int8))
