"""Random configuration sampling helpers shared by the CLI and tests."""

from __future__ import annotations

import random

from .canonical import is_asymmetric
from .geometry import Point


def random_points(k: int, box: int, rng: random.Random) -> frozenset:
    """k distinct lattice points inside a box x box grid."""
    if k > box * box:
        raise ValueError("box too small for k distinct points")
    cells = [(x, y) for x in range(box) for y in range(box)]
    return frozenset(rng.sample(cells, k))


def random_asymmetric_config(k: int, box: int, rng: random.Random,
                             max_tries: int = 10_000) -> frozenset:
    """Rejection-sample an asymmetric configuration of k robots."""
    if k < 3:
        raise ValueError("asymmetric configurations need at least 3 robots")
    for _ in range(max_tries):
        c = random_points(k, box, rng)
        if is_asymmetric(c):
            return c
    raise RuntimeError(f"no asymmetric {k}-point set found in a {box}x{box} box")
