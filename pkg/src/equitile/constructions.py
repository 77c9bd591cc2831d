"""Closed-form reference tilings: quadratic, 3-, 6-, 3m^2- and 6m^2-tilings."""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .geometry import SQRT3, Point, add, dist2, orient, scale, sub
from .model import PlacedTile, Tiling, equilateral_target
from .numeric import Q3
from .theory import TileShape


def _q3(x) -> Q3:
    return x if isinstance(x, Q3) else Q3(x)


def subdivide(tri: Sequence[Point], n: int) -> List[Tuple[Point, Point, Point]]:
    """Split a triangle into n^2 congruent copies at scale 1/n.

    Vertex order of every piece matches the corresponding vertices of ``tri``
    (downward pieces are point reflections, so order is preserved up to a half turn).
    """
    P, Q, R = tri
    u = scale(sub(Q, P), Q3(1) / n)
    v = scale(sub(R, P), Q3(1) / n)

    def at(i, j):
        return add(P, add(scale(u, i), scale(v, j)))

    out = []
    for j in range(n):
        for i in range(n - j):
            out.append((at(i, j), at(i + 1, j), at(i, j + 1)))
            if i + j < n - 1:
                # point reflection of the upward piece keeps the angle labels aligned
                out.append((at(i + 1, j + 1), at(i, j + 1), at(i + 1, j)))
    return out


def _tiling(X: Q3, shape: TileShape, pieces) -> Tiling:
    return Tiling(equilateral_target(X), shape, tuple(PlacedTile(*p) for p in pieces))


def _labelled(tri, shape: TileShape):
    """Reorder a triangle's vertices into (alpha, beta, gamma) order."""
    p = list(tri)
    sq = shape.side_squares()
    perms = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    best = None
    for i, j, k in perms:
        if dist2(p[j], p[k]) == sq[0] and dist2(p[k], p[i]) == sq[1] and dist2(p[i], p[j]) == sq[2]:
            cand = (p[i], p[j], p[k])
            if orient(*cand) > 0:
                return cand
            best = best or cand
    if best is None:
        raise ValueError("triangle is not congruent to the tile")
    return best


def quadratic_tiling(X, n: int) -> Tiling:
    """n^2 equilateral tiles of side X/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    X = _q3(X)
    target = equilateral_target(X)
    s = X / n
    shape = TileShape.from_sides(s, s, s)
    return _tiling(X, shape, subdivide(target, n))


def _center_pieces(X: Q3):
    A, B, C = equilateral_target(X)
    O = (X / 2, X * SQRT3 / 6)
    # (O, A, B): gamma = 2pi/3 at O, c = AB
    return [(A, B, O), (B, C, O), (C, A, O)]


def _altitude_pieces(X: Q3):
    A, B, C = equilateral_target(X)
    O = (X / 2, X * SQRT3 / 6)
    mab = (X / 2, Q3(0))
    mbc = ((B[0] + C[0]) / 2, (B[1] + C[1]) / 2)
    mca = ((C[0] + A[0]) / 2, (C[1] + A[1]) / 2)
    # alpha (pi/6) at the target corner, beta (pi/2) at the midpoint, gamma (pi/3) at O
    return [
        (A, mab, O), (B, mab, O),
        (B, mbc, O), (C, mbc, O),
        (C, mca, O), (A, mca, O),
    ]


def center3_shape(X: Q3) -> TileShape:
    return TileShape.from_sides(X * SQRT3 / 3, X * SQRT3 / 3, X)


def altitude6_shape(X: Q3) -> TileShape:
    # short leg, hypotenuse, long leg: gamma = pi/3 sits opposite the long leg
    return TileShape.from_sides(X * SQRT3 / 6, X * SQRT3 / 3, X / 2)


def center3(X) -> Tiling:
    """Three (pi/6, pi/6, 2pi/3) tiles meeting at the centroid."""
    X = _q3(X)
    if X.sign() <= 0:
        raise ValueError("side must be positive")
    shape = center3_shape(X)
    return _tiling(X, shape, [_labelled(p, shape) for p in _center_pieces(X)])


def altitude6(X) -> Tiling:
    """Six (pi/6, pi/2, pi/3) tiles cut by the three altitudes."""
    X = _q3(X)
    if X.sign() <= 0:
        raise ValueError("side must be positive")
    shape = altitude6_shape(X)
    return _tiling(X, shape, [_labelled(p, shape) for p in _altitude_pieces(X)])


def _refined(X: Q3, base_shape: TileShape, pieces, m: int) -> Tiling:
    if m < 1:
        raise ValueError("m must be >= 1")
    shape = base_shape.scaled(Q3(1) / m)
    out = []
    for p in pieces:
        out.extend(subdivide(_labelled(p, base_shape), m))
    return _tiling(X, shape, out)


def hex3m2(X, m: int) -> Tiling:
    """center3 with every piece split quadratically: 3 m^2 tiles."""
    X = _q3(X)
    return _refined(X, center3_shape(X), _center_pieces(X), m)


def six_m2(X, m: int) -> Tiling:
    """altitude6 with every piece split quadratically: 6 m^2 tiles."""
    X = _q3(X)
    return _refined(X, altitude6_shape(X), _altitude_pieces(X), m)


CONSTRUCTIONS = {
    "quadratic": quadratic_tiling,
    "center3": center3,
    "altitude6": altitude6,
    "hex3m2": hex3m2,
    "six_m2": six_m2,
}
