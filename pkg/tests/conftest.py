import numpy as np
import pytest

from hadamaq import fourier, haagerup, mq, sylvester, tao
from hadamaq.phase import I, MINUS_ONE, ONE, Exact

# the 4x4 normalized square whose rows form the Klein four-group
KLEIN_SQUARE = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]

# 5x5 square whose rows generate S5 (0-based)
S5_SQUARE = [[0, 1, 2, 3, 4], [2, 0, 1, 4, 3], [3, 4, 0, 2, 1], [1, 3, 4, 0, 2], [4, 2, 3, 1, 0]]

# 1-based F2 tensor F2 as a +-1 matrix
F2F2_ONE_BASED = [[1, -1, -1, 1], [-1, -1, 1, 1], [-1, 1, -1, 1], [1, 1, 1, 1]]


def catalogue_matrices():
    return {
        "fourier2": fourier(2),
        "fourier3": fourier(3),
        "fourier4": fourier(4),
        "fourier5": fourier(5),
        "fourier6": fourier(6),
        "mq1": mq(ONE),
        "mq-1": mq(MINUS_ONE),
        "mqi": mq(I),
        "mq1/8": mq(Exact(1, 8)),
        "haagerup": haagerup(),
        "tao": tao(),
        "sylvester2": sylvester(2),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
