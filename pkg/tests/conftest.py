import math

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

# ex1 strip width, computed from the function parameter a = 2
EX1_D = 0.9 * 2.0 ** (1.0 / 4.0) * math.sin(math.pi / 4.0)
# strip width that generates the reference table
TABLE_D = 0.9 * math.sqrt(2.0) / 2.0
EX1_N1 = 17.05467564


def bisect(g, lo, hi, iters=200):
    """Plain bisection on a sign change of g over [lo, hi]."""
    glo = g(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.fixture
def ex1_d():
    return EX1_D
