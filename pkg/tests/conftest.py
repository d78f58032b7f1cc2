import random

import pytest

# The worked 8x6 example configuration: 11 robots, asymmetric, with the
# known maximal corner string below (scanned from (0,0), +y within a
# column, columns advancing +x).
REF11 = frozenset({
    (0, 1), (0, 3), (1, 2), (2, 0), (3, 3), (3, 5),
    (4, 0), (4, 5), (5, 1), (6, 4), (7, 2),
})
REF11_STRING = "010100001000100000000101100001010000000010001000"
REF11_HEAD = (0, 1)
REF11_TAIL = (7, 2)

LINE11 = frozenset((i, 0) for i in range(11))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def ref11():
    return REF11


@pytest.fixture
def line11():
    return LINE11
