import pytest

from geocrystal.linalg import RatMat
from geocrystal.quiver import QuiverRep


@pytest.fixture
def p0():
    """The worked example point: n=3, v=(1,1), w=(1,1), one leftward unit map."""
    return QuiverRep(
        3,
        (1, 1),
        (1, 1),
        B={(2, 1): RatMat([[1]]), (1, 2): RatMat([[0]])},
        i={1: RatMat([[1]]), 2: RatMat([[1]])},
    )
