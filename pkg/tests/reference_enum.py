"""Slow reference enumerator for tiny N, independent of the solver.

Breadth-first over sets of placed tiles. A tile may be added with a vertex at
any known point (target corners and tile vertices) and one edge running along
any known segment through that point, in either direction, with either
rotation sense. States are deduplicated as frozensets of vertex sets. Only the
field arithmetic is shared with the package.
"""

from equitile.numeric import Q3, q3_sqrt

ZERO = Q3(0)


def _orient(a, b, c):
    return ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).sign()


def _on_closed_segment(p, a, b):
    if _orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _overlap(t1, t2):
    # separating axis over the six edge lines; touching is fine
    for tri, other in ((t1, t2), (t2, t1)):
        o = _orient(*tri)
        for i in range(3):
            u, v = tri[i], tri[(i + 1) % 3]
            if all(_orient(u, v, w) * o <= 0 for w in other):
                return False
    return True


def _inside(p, tri):
    o = _orient(*tri)
    return all(_orient(tri[i], tri[(i + 1) % 3], p) * o >= 0 for i in range(3))


def _area2(tri):
    a, b, c = tri
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return v if v.sign() >= 0 else -v


def _angles(sides):
    """(cos, sin, l1, l2) for each corner: l1, l2 the lengths of its two edges."""
    out = []
    for i in range(3):
        opp = sides[i]
        l1, l2 = sides[(i + 1) % 3], sides[(i + 2) % 3]
        cos = (l1 * l1 + l2 * l2 - opp * opp) / (2 * l1 * l2)
        sin = q3_sqrt(Q3(1) - cos * cos)
        out.append((cos, sin, l1, l2))
    return out


def target_side(n, sides):
    a, b, c = sides
    s16 = (a + b + c) * (b + c - a) * (a - b + c) * (a + b - c)  # 16 area^2 (Heron)
    # sqrt(3)/4 X^2 = n * area  =>  3 X^4 = n^2 * s16
    x4 = Q3(n * n) * s16 / 3
    x2 = q3_sqrt(x4)
    return None if x2 is None else q3_sqrt(x2)


def reference_tiles(n, sides, max_states=200000):
    """True if some n-tiling exists, False if none; None when X is not in Q(sqrt 3)."""
    sides = tuple(Q3(s) if not isinstance(s, Q3) else s for s in sides)
    X = target_side(n, sides)
    if X is None:
        return None
    half = X / 2
    h = q3_sqrt(X * X * 3 / 4)
    target = ((ZERO, ZERO), (X, ZERO), (half, h))
    target_area2 = _area2(target)
    angles = _angles(sides)
    level = {frozenset()}
    for _ in range(n):
        nxt = set()
        for state in level:
            tiles = [tuple(t) for t in state]
            points = set(target)
            segs = [(target[i], target[(i + 1) % 3]) for i in range(3)]
            for t in tiles:
                points.update(t)
                segs.extend((t[i], t[(i + 1) % 3]) for i in range(3))
            for P in points:
                dirs = set()
                for a, b in segs:
                    if _on_closed_segment(P, a, b):
                        for e in (a, b):
                            if e != P:
                                dx, dy = e[0] - P[0], e[1] - P[1]
                                L = q3_sqrt(dx * dx + dy * dy)
                                dirs.add((dx / L, dy / L))
                for ux, uy in dirs:
                    for cos, sin, l1, l2 in angles:
                        for sense in (1, -1):
                            s = sin * sense
                            rx, ry = ux * cos - uy * s, ux * s + uy * cos
                            for m1, m2 in ((l1, l2), (l2, l1)):
                                tri = (P, (P[0] + ux * m1, P[1] + uy * m1), (P[0] + rx * m2, P[1] + ry * m2))
                                if not all(_inside(p, target) for p in tri):
                                    continue
                                if any(_overlap(tri, t) for t in tiles):
                                    continue
                                nxt.add(state | {frozenset(tri)})
            if len(nxt) > max_states:
                raise RuntimeError("reference enumerator state budget exceeded")
        level = nxt
        if not level:
            return False
    for state in level:
        total = ZERO
        for t in state:
            total = total + _area2(tuple(t))
        if total == target_area2:
            return True
    return False
