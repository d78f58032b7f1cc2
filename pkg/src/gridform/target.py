"""Canonical form of the input pattern and its derived quantities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .canonical import canonical_frames, to_frame_coords
from .geometry import Point, bounding_rect


@dataclass(frozen=True)
class TargetPattern:
    """The input pattern in canonical coordinates.

    The bounding rectangle is [0, N-1] x [0, M-1] with N >= M, and the
    occupancy string scanned from the origin (+y within a column, columns
    advancing +x) is lexicographically maximal among all corner strings.
    """

    points: frozenset
    M: int
    N: int
    h_target: Point
    t_target: Point
    c_prime: frozenset
    c_double_prime: frozenset


def canonicalize_target(raw: Iterable[Point]) -> TargetPattern:
    """Transform an arbitrary pattern into the canonical coordinate system.

    Symmetric patterns have several maximal corner strings; every one of
    them must yield the same canonical point set, which is asserted here.
    """
    raw = frozenset(raw)
    frames = canonical_frames(raw)
    points = to_frame_coords(raw, frames[0])
    for f in frames[1:]:
        alt = to_frame_coords(raw, f)
        if alt != points:
            raise AssertionError(
                "maximal corner strings disagree on the canonical point set"
            )
    r = bounding_rect(points)
    n, m = r.width_pts, r.height_pts
    order = sorted(points)
    h, t = order[0], order[-1]
    return TargetPattern(
        points=points,
        M=m,
        N=n,
        h_target=h,
        t_target=t,
        c_prime=points - {t},
        c_double_prime=points - {h, t},
    )
