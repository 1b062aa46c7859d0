import numpy as np
import pytest

from homquantum.scalars import ScalarRing


@pytest.fixture
def cring():
    return ScalarRing.complex()


@pytest.fixture
def hring():
    return ScalarRing.hseries(8)


def bump(arr: np.ndarray, index: tuple, eps: float) -> np.ndarray:
    """Copy of ``arr`` with ``eps`` added to the constant term at ``index``."""
    out = np.array(arr)
    out[index + (0,)] += eps
    return out
