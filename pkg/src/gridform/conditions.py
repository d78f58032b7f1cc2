"""Boolean conditions over a configuration-in-frame and the phase classifier."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .geometry import Point, bounding_rect
from .target import TargetPattern

PHASES = ("P1", "P2", "P3", "P4", "P5", "P6", "P7", "DONE")


@dataclass(frozen=True)
class ConditionVector:
    c0: bool
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    c6: bool
    c7: bool
    c8: bool
    m: int
    n: int
    M: int
    N: int
    H: int
    V: int
    head: Point
    tail: Point


def has_horizontal_reflection(points: frozenset) -> bool:
    """Non-trivial reflectional symmetry about a horizontal line.

    The axis of any set-preserving horizontal reflection is the midline of
    the set's bounding box (integer or half-integer y). The reflection is
    trivial if every point lies on the axis.
    """
    ys = [p[1] for p in points]
    axis2 = min(ys) + max(ys)  # doubled to stay in integers
    if all(2 * y == axis2 for y in ys):
        return False
    return all((x, axis2 - y) in points for x, y in points)


def evaluate_conditions(c_frame: Iterable[Point], t: TargetPattern) -> ConditionVector:
    """Evaluate C0..C8 for a configuration expressed in canonical coordinates."""
    cf = frozenset(c_frame)
    if len(cf) != len(t.points):
        raise ValueError(
            f"configuration has {len(cf)} robots but the target has {len(t.points)}"
        )
    r = bounding_rect(cf)
    n, m = r.width_pts, r.height_pts
    order = sorted(cf)  # scan order of the canonical string
    head, tail = order[0], order[-1]
    c_prime = cf - {tail}
    rp = bounding_rect(c_prime)
    H, V = rp.width_pts, rp.height_pts
    return ConditionVector(
        c0=cf == t.points,
        c1=c_prime == t.c_prime,
        c2=tail[1] == t.t_target[1],
        c3=n >= max(t.M, m) + 2,
        c4=n >= 2 * max(t.N, H),
        c5=head == (0, 0),
        c6=m >= max(t.M, V) + 1,
        c7=cf - {head, tail} == t.c_double_prime,
        c8=has_horizontal_reflection(c_prime),
        m=m,
        n=n,
        M=t.M,
        N=t.N,
        H=H,
        V=V,
        head=head,
        tail=tail,
    )


def classify_phase(cv: ConditionVector) -> str:
    """Walk the phase decision tree; exactly one phase fits any vector."""
    if cv.c0:
        return "DONE"
    if cv.c1 and cv.c2:
        return "P7"
    if not (cv.c3 and cv.c4):
        return "P1"
    if not cv.c7:
        if not cv.c5:
            return "P2"
        return "P4" if cv.c6 else "P3"
    if not cv.c2:
        return "P5" if cv.c5 else "P2"
    return "P6"
