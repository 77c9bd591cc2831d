"""Exact planar predicates over points with Q3 coordinates.

A point is a plain ``(x, y)`` tuple of :class:`~equitile.numeric.Q3`. A rotation
is a ``(cos, sin)`` pair of Q3 with ``cos^2 + sin^2 == 1``.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .numeric import Q3, _sign3, q3_sqrt

Point = Tuple[Q3, Q3]
Rotation = Tuple[Q3, Q3]

ZERO = Q3(0)
ONE = Q3(1)
HALF = Q3(1, 0) / 2
SQRT3 = Q3(0, 1)
IDENTITY: Rotation = (ONE, ZERO)


def pt(x, y) -> Point:
    return (x if isinstance(x, Q3) else Q3(x), y if isinstance(y, Q3) else Q3(y))


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def scale(v: Point, k) -> Point:
    return (v[0] * k, v[1] * k)


def cross(u: Point, v: Point) -> Q3:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> Q3:
    return u[0] * v[0] + u[1] * v[1]


def _diff(u: Q3, v: Q3):
    # u - v as an unreduced (p, q, d) triple, d > 0
    if u._d == v._d:
        return u._p - v._p, u._q - v._q, u._d
    return u._p * v._d - v._p * u._d, u._q * v._d - v._q * u._d, u._d * v._d


def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if a, b, c turn counterclockwise, -1 clockwise, 0 collinear.

    Works on the integer numerators directly; same value as the sign of
    ``signed_area2`` without building intermediate field elements.
    """
    x1p, x1q, x1d = _diff(b[0], a[0])
    y2p, y2q, y2d = _diff(c[1], a[1])
    y1p, y1q, y1d = _diff(b[1], a[1])
    x2p, x2q, x2d = _diff(c[0], a[0])
    d1 = x1d * y2d
    d2 = y1d * x2d
    return _sign3((x1p * y2p + 3 * x1q * y2q) * d2 - (y1p * x2p + 3 * y1q * x2q) * d1,
                  (x1p * y2q + x1q * y2p) * d2 - (y1p * x2q + y1q * x2p) * d1)


def signed_area2(a: Point, b: Point, c: Point) -> Q3:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def dist2(p: Point, q: Point) -> Q3:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def length(p: Point, q: Point) -> Optional[Q3]:
    """Exact distance if it lies in Q(sqrt 3), else None."""
    return q3_sqrt(dist2(p, q))


def unit(v: Point) -> Point:
    n = q3_sqrt(v[0] * v[0] + v[1] * v[1])
    if n is None:
        raise ValueError("direction has no unit vector in Q(sqrt 3)")
    return (v[0] / n, v[1] / n)


def lex_key(p: Point):
    return p


def rot_compose(r1: Rotation, r2: Rotation) -> Rotation:
    c1, s1 = r1
    c2, s2 = r2
    return (c1 * c2 - s1 * s2, s1 * c2 + c1 * s2)


def rot_inverse(r: Rotation) -> Rotation:
    return (r[0], -r[1])


def rotate(v: Point, r: Rotation) -> Point:
    c, s = r
    return (v[0] * c - v[1] * s, v[0] * s + v[1] * c)


def rotation_between(u: Point, w: Point) -> Rotation:
    """Rotation taking unit vector ``u`` to unit vector ``w``."""
    return (dot(u, w), cross(u, w))


def half_turn_index(r: Rotation) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2 pi)."""
    c, s = r
    ss = s.sign()
    if ss > 0 or (ss == 0 and c.sign() > 0):
        return 0
    return 1


def angle_less(r1: Rotation, r2: Rotation) -> bool:
    """Exact comparison of the angles of two rotations, taken in [0, 2 pi)."""
    h1 = half_turn_index(r1)
    h2 = half_turn_index(r2)
    if h1 != h2:
        return h1 < h2
    return cross(r1, r2).sign() > 0


def collinear(a: Point, b: Point, c: Point) -> bool:
    return orient(a, b, c) == 0


def in_open_segment(p: Point, a: Point, b: Point) -> bool:
    """True if p lies on segment ab strictly between its endpoints."""
    if orient(a, b, p) != 0:
        return False
    d = sub(b, a)
    t = dot(sub(p, a), d)
    return t.sign() > 0 and (t - dot(d, d)).sign() < 0


def in_closed_segment(p: Point, a: Point, b: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    d = sub(b, a)
    t = dot(sub(p, a), d)
    return t.sign() >= 0 and (t - dot(d, d)).sign() <= 0


def point_in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    o = orient(a, b, c)
    return o * orient(a, b, p) >= 0 and o * orient(b, c, p) >= 0 and o * orient(c, a, p) >= 0


def segment_meets_open_triangle(p: Point, q: Point, tri) -> bool:
    """Does closed segment pq intersect the open interior of triangle ``tri``?

    Separating axes: they are disjoint exactly when a triangle edge has p and q
    weakly outside, or the line pq has the whole triangle weakly on one side.
    """
    a, b, c = tri
    o = orient(a, b, c)
    for u, v in ((a, b), (b, c), (c, a)):
        if orient(u, v, p) * o <= 0 and orient(u, v, q) * o <= 0:
            return False
    sa = orient(p, q, a)
    sb = orient(p, q, b)
    sc = orient(p, q, c)
    if (sa >= 0 and sb >= 0 and sc >= 0) or (sa <= 0 and sb <= 0 and sc <= 0):
        return False
    return True


def line_key(p: Point, q: Point):
    """Hashable key identifying the infinite line through p and q."""
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if dx:
        m = dy / dx
        return ("s", m, p[1] - m * p[0])
    return ("v", p[0])


def line_param(key, p: Point) -> Q3:
    """Monotone coordinate of ``p`` along the line ``key``."""
    return p[0] if key[0] == "s" else p[1]


def triangle_interiors_overlap(t1, t2) -> bool:
    """Separating-axis test for two triangles; touching is not overlap."""
    for tri, other in ((t1, t2), (t2, t1)):
        a, b, c = tri
        o = orient(a, b, c)
        for u, v in ((a, b), (b, c), (c, a)):
            if all(orient(u, v, w) * o <= 0 for w in other):
                return False
    return True


def to_float(p: Point) -> Tuple[float, float]:
    return (float(p[0]), float(p[1]))
