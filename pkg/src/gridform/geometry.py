"""Integer-lattice primitives: points, bounding rectangles, grid isometries.

A configuration is a finite set of distinct lattice points, represented as a
``frozenset`` of ``(x, y)`` integer tuples. All operations here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

Point = tuple[int, int]

# Rotation matrices for k counterclockwise quarter turns, row-major (a, b, c, d)
# meaning (x, y) -> (a*x + b*y, c*x + d*y).
_ROT = {
    0: (1, 0, 0, 1),
    1: (0, -1, 1, 0),
    2: (-1, 0, 0, -1),
    3: (0, 1, -1, 0),
}
# Reflection about the vertical axis: x -> -x.
_FLIP = (-1, 0, 0, 1)


def _matmul(m1, m2):
    a, b, c, d = m1
    e, f, g, h = m2
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@dataclass(frozen=True)
class Isometry:
    """A lattice isometry: reflect (about the vertical axis), then rotate
    ``rot`` quarter turns counterclockwise, then translate by ``(tx, ty)``."""

    rot: int = 0
    reflect: bool = False
    tx: int = 0
    ty: int = 0

    def matrix(self) -> tuple[int, int, int, int]:
        m = _ROT[self.rot % 4]
        return _matmul(m, _FLIP) if self.reflect else m

    def apply(self, p: Point) -> Point:
        a, b, c, d = self.matrix()
        x, y = p
        return (a * x + b * y + self.tx, c * x + d * y + self.ty)

    def apply_set(self, points: Iterable[Point]) -> frozenset:
        return frozenset(self.apply(p) for p in points)

    def compose(self, other: "Isometry") -> "Isometry":
        """Return self ∘ other (other applied first)."""
        m = _matmul(self.matrix(), other.matrix())
        a, b, c, d = self.matrix()
        tx = a * other.tx + b * other.ty + self.tx
        ty = c * other.tx + d * other.ty + self.ty
        return _from_matrix(m, tx, ty)

    def inverse(self) -> "Isometry":
        a, b, c, d = self.matrix()
        # Orthogonal integer matrix: inverse is the transpose.
        inv = (a, c, b, d)
        tx = -(a * self.tx + c * self.ty)
        ty = -(b * self.tx + d * self.ty)
        return _from_matrix(inv, tx, ty)


def _from_matrix(m, tx: int, ty: int) -> Isometry:
    for rot in range(4):
        for reflect in (False, True):
            if Isometry(rot, reflect).matrix() == m:
                return Isometry(rot, reflect, tx, ty)
    raise ValueError(f"not an axis-aligned orthogonal matrix: {m}")


#: The 8 rotation/reflection classes (no translation).
LINEAR_CLASSES = tuple(
    Isometry(rot, reflect) for reflect in (False, True) for rot in range(4)
)

IDENTITY = Isometry()


@dataclass(frozen=True)
class Rect:
    """Tightest axis-aligned rectangle; side sizes count grid points."""

    min: Point
    max: Point

    @property
    def width_pts(self) -> int:
        return self.max[0] - self.min[0] + 1

    @property
    def height_pts(self) -> int:
        return self.max[1] - self.min[1] + 1


def bounding_rect(c: Iterable[Point]) -> Rect:
    """Smallest grid-aligned rectangle containing all points of ``c``."""
    xs = [p[0] for p in c]
    if not xs:
        raise ValueError("empty configuration")
    ys = [p[1] for p in c]
    return Rect((min(xs), min(ys)), (max(xs), max(ys)))


def apply_isometry(g: Isometry, c: Iterable[Point]) -> frozenset:
    return g.apply_set(c)


def similar(a: Iterable[Point], b: Iterable[Point]) -> Optional[Isometry]:
    """Witness isometry g with g(a) = b, or None.

    Both sets are anchored by their bounding-rectangle corners, so only the
    8 rotation/reflection classes need to be tried.
    """
    a, b = frozenset(a), frozenset(b)
    if len(a) != len(b):
        return None
    if not a:
        return IDENTITY
    bmin = bounding_rect(b).min
    for lin in LINEAR_CLASSES:
        img = lin.apply_set(a)
        imin = bounding_rect(img).min
        g = Isometry(lin.rot, lin.reflect, bmin[0] - imin[0], bmin[1] - imin[1])
        if g.apply_set(a) == b:
            return g
    return None
