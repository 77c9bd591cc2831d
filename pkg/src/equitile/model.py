"""Exact tilings of an equilateral triangle and their combinatorial analysis."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import (
    HALF,
    IDENTITY,
    ONE,
    SQRT3,
    ZERO,
    Point,
    Rotation,
    angle_less,
    dist2,
    in_closed_segment,
    in_open_segment,
    length,
    line_key,
    line_param,
    orient,
    point_in_closed_triangle,
    rot_compose,
    signed_area2,
    triangle_interiors_overlap,
)
from .numeric import Q3
from .theory import TileShape

EDGE_LABELS = ("a", "b", "c")
ANGLE_LABELS = ("alpha", "beta", "gamma")
# ties between equal sides resolve toward c first, then a
_LABEL_PRIORITY = (2, 0, 1)

CORNER_ROTATION: Rotation = (HALF, SQRT3 / 2)
STRAIGHT_ROTATION: Rotation = (-ONE, ZERO)


class TilingError(Exception):
    pass


class MalformedTilingError(TilingError):
    pass


class DegenerateLabelsError(TilingError):
    """The c edge is not distinguishable from a or b by length."""


class NotBipartiteError(TilingError):
    pass


class HypothesisViolation(TilingError):
    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{clause} at {_fmt_point(v)}" for v, clause in self.violations)
        super().__init__(text)

    def clauses(self) -> List[str]:
        return [c for _, c in self.violations]


def _fmt_point(p: Point) -> str:
    return f"({p[0]}, {p[1]})"


@dataclass(frozen=True)
class PlacedTile:
    """Three exact vertices. Tiles built by this package list their vertices in
    (alpha, beta, gamma) order, so ``mirrored`` flags a reflected copy."""

    p0: Point
    p1: Point
    p2: Point

    def __post_init__(self):
        if signed_area2(self.p0, self.p1, self.p2).sign() == 0:
            raise MalformedTilingError("degenerate tile")

    @property
    def points(self) -> Tuple[Point, Point, Point]:
        return (self.p0, self.p1, self.p2)

    @property
    def mirrored(self) -> bool:
        return signed_area2(self.p0, self.p1, self.p2).sign() < 0

    def area2(self) -> Q3:
        return abs(signed_area2(self.p0, self.p1, self.p2))

    def edges(self):
        """``(i, p, q)`` with ``p, q`` the endpoints of the edge opposite vertex i."""
        p = self.points
        return ((0, p[1], p[2]), (1, p[2], p[0]), (2, p[0], p[1]))

    def translated(self, dx, dy) -> "PlacedTile":
        return PlacedTile(*[(x + dx, y + dy) for x, y in self.points])

    def canonical(self):
        return tuple(sorted(self.points))


@dataclass(frozen=True)
class Tiling:
    target: Tuple[Point, Point, Point]
    shape: TileShape
    tiles: Tuple[PlacedTile, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        object.__setattr__(self, "target", tuple(self.target))

    @property
    def N(self) -> int:
        return len(self.tiles)

    def side_length(self) -> Q3:
        A, B, _ = self.target
        x = length(A, B)
        if x is None:
            raise MalformedTilingError("target side not in Q(sqrt 3)")
        return x

    def side_points(self, side: str) -> Tuple[Point, Point]:
        A, B, C = self.target
        return {"AB": (A, B), "BC": (B, C), "CA": (C, A)}[side]


def equilateral_target(X: Q3) -> Tuple[Point, Point, Point]:
    return ((ZERO, ZERO), (X, ZERO), (X / 2, X * SQRT3 / 2))


# --- labels -----------------------------------------------------------------

def _edge_label_index(shape: TileShape, len2: Q3) -> Optional[int]:
    squares = shape.side_squares()
    for i in _LABEL_PRIORITY:
        if squares[i] == len2:
            return i
    return None


def edge_label(shape: TileShape, p: Point, q: Point) -> Optional[str]:
    i = _edge_label_index(shape, dist2(p, q))
    return None if i is None else EDGE_LABELS[i]


def _check_labels_distinct(shape: TileShape) -> None:
    if shape.c == shape.a or shape.c == shape.b:
        raise DegenerateLabelsError("c coincides with a or b; relation analysis needs a distinct c")


# --- verification ------------------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_tiling(t: Tiling, allow_reflections: bool = True) -> VerificationReport:
    """Exact check that ``t`` is a tiling of its equilateral target by copies of its tile."""
    out: List[str] = []
    A, B, C = t.target
    if not (dist2(A, B) == dist2(B, C) == dist2(C, A)) or orient(A, B, C) == 0:
        out.append("target is not a nondegenerate equilateral triangle")
    sq = sorted(t.shape.side_squares())
    for k, tile in enumerate(t.tiles):
        lens = sorted(dist2(p, q) for _, p, q in tile.edges())
        if lens != sq:
            out.append(f"tile {k}: edge lengths do not match the tile")
            continue
        if not allow_reflections and t.shape.is_scalene() and _is_reflected(t.shape, tile):
            out.append(f"tile {k}: mirrored copy not allowed")
    orient_t = orient(A, B, C)
    for k, tile in enumerate(t.tiles):
        for p in tile.points:
            if not point_in_closed_triangle(p, A, B, C):
                out.append(f"tile {k}: vertex {_fmt_point(p)} outside target")
                break
    tiles = t.tiles
    for i in range(len(tiles)):
        ti = tiles[i].points
        for j in range(i + 1, len(tiles)):
            if triangle_interiors_overlap(ti, tiles[j].points):
                out.append(f"tiles {i} and {j} overlap")
    total = ZERO
    for tile in tiles:
        total = total + tile.area2()
    if orient_t != 0 and total != abs(signed_area2(A, B, C)):
        out.append("tile areas do not sum to the target area")
    return VerificationReport(not out, out)


def _is_reflected(shape: TileShape, tile: PlacedTile) -> bool:
    # vertex carrying each angle = vertex opposite the matching edge
    order = [None, None, None]
    for i, p, q in tile.edges():
        k = _edge_label_index(shape, dist2(p, q))
        order[k] = tile.points[i]
    return orient(order[0], order[1], order[2]) < 0


# --- vertex census -----------------------------------------------------------

@dataclass(frozen=True)
class VertexInfo:
    location: Point
    kind: str  # "Corner" | "Boundary" | "Interior"
    incident: Tuple[Tuple[int, str], ...]
    angle_sum: Rotation
    turns: int

    @property
    def count(self) -> int:
        return len(self.incident)


def angle_at(shape: TileShape, tile: PlacedTile, i: int) -> str:
    p = tile.points
    k = _edge_label_index(shape, dist2(p[(i + 1) % 3], p[(i + 2) % 3]))
    if k is None:
        raise MalformedTilingError(f"angle at {_fmt_point(p[i])} matches none of alpha, beta, gamma")
    return ANGLE_LABELS[k]


def _rotation_for(shape: TileShape, label: str) -> Rotation:
    return {"alpha": shape.alpha, "beta": shape.beta, "gamma": shape.gamma}[label]


def accumulate_angles(rotations: Sequence[Rotation]) -> Tuple[Rotation, int]:
    """Exact sum of angles in (0, pi): resulting rotation and full turns."""
    cur = IDENTITY
    turns = 0
    for r in rotations:
        nxt = rot_compose(cur, r)
        if angle_less(nxt, cur) or nxt == IDENTITY:
            turns += 1
        cur = nxt
    return cur, turns


def _all_edges(t: Tiling):
    for k, tile in enumerate(t.tiles):
        for i, p, q in tile.edges():
            yield k, i, p, q


def vertex_census(t: Tiling) -> List[VertexInfo]:
    incident: Dict[Point, List[Tuple[int, str]]] = defaultdict(list)
    for k, tile in enumerate(t.tiles):
        for i, p in enumerate(tile.points):
            incident[p].append((k, angle_at(t.shape, tile, i)))
    A, B, C = t.target
    sides = ((A, B), (B, C), (C, A))
    edges = list(_all_edges(t))
    out = []
    for v in sorted(incident):
        if v in t.target:
            kind = "Corner"
            expected = (CORNER_ROTATION, 0)
        elif any(in_open_segment(v, p, q) for p, q in sides) or any(
            in_open_segment(v, p, q) for _, _, p, q in edges
        ):
            kind = "Boundary"
            expected = (STRAIGHT_ROTATION, 0)
        else:
            kind = "Interior"
            expected = (IDENTITY, 1)
        labels = incident[v]
        rot, turns = accumulate_angles([_rotation_for(t.shape, lab) for _, lab in labels])
        if (rot, turns) != expected:
            raise MalformedTilingError(f"angles at {_fmt_point(v)} do not close up for a {kind} vertex")
        out.append(VertexInfo(v, kind, tuple(labels), rot, turns))
    return out


def is_regular(t: Tiling, census: Optional[List[VertexInfo]] = None) -> bool:
    """At every vertex the number of alpha angles equals the number of beta angles.

    Angles are compared by value, so equal alpha and beta count for both.
    """
    census = vertex_census(t) if census is None else census
    sh = t.shape
    for v in census:
        rots = [_rotation_for(sh, lab) for _, lab in v.incident]
        if sum(r == sh.alpha for r in rots) != sum(r == sh.beta for r in rots):
            return False
    return True


# --- adjacency and coloring -------------------------------------------------

@dataclass(frozen=True)
class _LineEdge:
    t0: Q3
    t1: Q3
    tile: int
    vertex: int  # index of the opposite vertex in the tile
    p: Point
    q: Point


def _line_groups(t: Tiling) -> Dict[tuple, List[_LineEdge]]:
    groups: Dict[tuple, List[_LineEdge]] = defaultdict(list)
    for k, i, p, q in _all_edges(t):
        key = line_key(p, q)
        a, b = line_param(key, p), line_param(key, q)
        if b < a:
            a, b, p, q = b, a, q, p
        groups[key].append(_LineEdge(a, b, k, i, p, q))
    for lst in groups.values():
        lst.sort(key=lambda e: (e.t0, e.t1))
    return groups


def adjacency(t: Tiling) -> List[set]:
    """Tiles sharing a boundary segment of positive length."""
    adj = [set() for _ in t.tiles]
    for edges in _line_groups(t).values():
        for i, e in enumerate(edges):
            for f in edges[i + 1:]:
                if not f.t0 < e.t1:
                    break
                if f.tile != e.tile:
                    adj[e.tile].add(f.tile)
                    adj[f.tile].add(e.tile)
    return adj


@dataclass(frozen=True)
class ColoringResult:
    colors: Tuple[bool, ...]  # True = black
    M: int

    @property
    def black(self) -> int:
        return sum(self.colors)

    @property
    def white(self) -> int:
        return len(self.colors) - self.black


def coloring_hypotheses(t: Tiling, census: Optional[List[VertexInfo]] = None):
    """List of (vertex, clause) pairs violating the coloring theorem's hypotheses."""
    census = vertex_census(t) if census is None else census
    by_loc = {v.location: v for v in census}
    A, B, C = t.target
    bad = []
    if by_loc[A].count != 1:
        bad.append((A, "one-tile-at-A"))
    for v in census:
        if v.kind == "Boundary" and v.count % 2 == 0:
            bad.append((v.location, "boundary-odd"))
        elif v.kind == "Interior" and v.count % 2 == 1:
            bad.append((v.location, "interior-even"))
    if by_loc[B].count % 2 != by_loc[C].count % 2:
        bad.append((B, "B-C-parity"))
    return bad


def compute_coloring(t: Tiling) -> ColoringResult:
    census = vertex_census(t)
    bad = coloring_hypotheses(t, census)
    if bad:
        raise HypothesisViolation(bad)
    A = t.target[0]
    start = next(k for k, tile in enumerate(t.tiles) if A in tile.points)
    adj = adjacency(t)
    color: List[Optional[bool]] = [None] * t.N
    color[start] = True
    queue = deque([start])
    while queue:
        k = queue.popleft()
        for j in sorted(adj[k]):
            if color[j] is None:
                color[j] = not color[k]
                queue.append(j)
            elif color[j] == color[k]:
                raise NotBipartiteError(f"tiles {k} and {j} are adjacent with equal colors")
    if any(c is None for c in color):
        raise NotBipartiteError("adjacency graph is disconnected")
    black = sum(color)
    return ColoringResult(tuple(color), black - (t.N - black))


def check_coloring_equation(t: Tiling, col: ColoringResult) -> bool:
    """X +/- Y + Z == M (a + b + c) with Y the side opposite A."""
    A, B, C = t.target
    X = length(A, B)
    Y = length(B, C)
    Z = length(C, A)
    if X is None or Y is None or Z is None:
        return False
    at_b = sum(1 for tile in t.tiles if B in tile.points)
    at_c = sum(1 for tile in t.tiles if C in tile.points)
    lhs = X + Y + Z if at_b % 2 == 1 else X - Y + Z
    sh = t.shape
    return lhs == col.M * (sh.a + sh.b + sh.c)


# --- sides and segments -------------------------------------------------------

def decompose_side(t: Tiling, side: str) -> Tuple[int, int, int]:
    """Counts (p, q, r) of a-, b-, c-edges lying on a side of the target."""
    P, Q = t.side_points(side)
    counts = [0, 0, 0]
    for _, _, p, q in _all_edges(t):
        if in_closed_segment(p, P, Q) and in_closed_segment(q, P, Q):
            k = _edge_label_index(t.shape, dist2(p, q))
            if k is None:
                raise MalformedTilingError("boundary edge matches no side label")
            counts[k] += 1
    sh = t.shape
    X = length(P, Q)
    if X is None or counts[0] * sh.a + counts[1] * sh.b + counts[2] * sh.c != X:
        raise MalformedTilingError(f"side {side} is not covered by tile edges")
    return tuple(counts)


@dataclass(frozen=True)
class SupportedEdge:
    tile: int
    label: str
    length: Q3
    t0: Q3
    t1: Q3


@dataclass(frozen=True)
class MaximalSegment:
    start: Point
    end: Point
    internal: bool
    left: Tuple[SupportedEdge, ...]
    right: Tuple[SupportedEdge, ...]

    def tiles(self) -> set:
        return {e.tile for e in self.left} | {e.tile for e in self.right}


def maximal_segments(t: Tiling, include_boundary: bool = False) -> List[MaximalSegment]:
    A, B, C = t.target
    boundary_keys = {line_key(A, B), line_key(B, C), line_key(C, A)}
    sides = t.shape.sides
    out = []
    for key, edges in _line_groups(t).items():
        internal = key not in boundary_keys
        if not internal and not include_boundary:
            continue
        comps: List[List[_LineEdge]] = []
        hi = None
        for e in edges:
            if hi is not None and not hi < e.t0:
                comps[-1].append(e)
                if hi < e.t1:
                    hi = e.t1
            else:
                comps.append([e])
                hi = e.t1
        for comp in comps:
            start = comp[0].p
            end = max(comp, key=lambda e: e.t1).q
            left, right = [], []
            for e in comp:
                tile = t.tiles[e.tile]
                k = _edge_label_index(t.shape, dist2(e.p, e.q))
                se = SupportedEdge(e.tile, EDGE_LABELS[k], sides[k], e.t0, e.t1)
                if orient(start, end, tile.points[e.vertex]) > 0:
                    left.append(se)
                else:
                    right.append(se)
            out.append(MaximalSegment(start, end, internal, tuple(left), tuple(right)))
    out.sort(key=lambda s: (s.start, s.end))
    return out


# --- relations and the c-graph --------------------------------------------------

@dataclass(frozen=True)
class RelationWitness:
    X: Q3  # line parameter of the span start
    Y: Q3
    form: str  # "jc_eq_la_mb" | "jc_eq_la_mc" | "ja_eq_lc_ma"
    j: int
    l: int
    m: int


def _span_labels(edges: Sequence[SupportedEdge], lo: Q3, hi: Q3) -> List[str]:
    return [e.label for e in edges if not e.t0 < lo and not hi < e.t1]


def witnesses_on_segment(seg: MaximalSegment) -> List[RelationWitness]:
    marks_l = {e.t0 for e in seg.left} | {e.t1 for e in seg.left}
    marks_r = {e.t0 for e in seg.right} | {e.t1 for e in seg.right}
    common = sorted(marks_l & marks_r)
    out = []
    for i in range(len(common)):
        for k in range(i + 1, len(common)):
            lo, hi = common[i], common[k]
            L = _span_labels(seg.left, lo, hi)
            R = _span_labels(seg.right, lo, hi)
            for one, other in ((L, R), (R, L)):
                w = _classify(one, other)
                if w is not None:
                    out.append(RelationWitness(lo, hi, *w))
                    break
    return out


def _classify(one: List[str], other: List[str]):
    if not one or not other:
        return None
    if all(x == "c" for x in one):
        j = len(one)
        na, nb, nc = other.count("a"), other.count("b"), other.count("c")
        if nc == 0:
            return ("jc_eq_la_mb", j, na, nb)
        if nb == 0 and na > 0:
            return ("jc_eq_la_mc", j, na, nc)
    if all(x == "a" for x in one):
        na, nb, nc = other.count("a"), other.count("b"), other.count("c")
        if nb == 0 and nc > 0:
            return ("ja_eq_lc_ma", len(one), nc, na)
    return None


def find_relation_witnesses(t: Tiling) -> List[RelationWitness]:
    _check_labels_distinct(t.shape)
    out = []
    for seg in maximal_segments(t):
        out.extend(witnesses_on_segment(seg))
    return out


@dataclass(frozen=True)
class GammaC:
    nodes: Tuple[Point, ...]
    edges: Tuple[Tuple[Point, Point], ...]


def _point_at(seg: MaximalSegment, param: Q3) -> Point:
    (x0, y0), (x1, y1) = seg.start, seg.end
    if x0 != x1:
        s = (param - x0) / (x1 - x0)
    else:
        s = (param - y0) / (y1 - y0)
    return (x0 + s * (x1 - x0), y0 + s * (y1 - y0))


def gamma_c_edges_on_segment(seg: MaximalSegment) -> List[Tuple[Q3, Q3]]:
    """Edges X -> Y (as line parameters) contributed by one maximal segment."""
    out = []
    for side in (seg.left, seg.right):
        ordered = sorted(side, key=lambda e: e.t0)
        for run in (ordered, ordered[::-1]):
            n = 0
            while n < len(run) and run[n].label == "c":
                n += 1
            if 0 < n < len(run):
                forward = run is ordered
                X = run[0].t0 if forward else run[0].t1
                Y = run[n - 1].t1 if forward else run[n - 1].t0
                out.append((X, Y))
    return out


def build_gamma_c(t: Tiling) -> GammaC:
    _check_labels_distinct(t.shape)
    edges = []
    for seg in maximal_segments(t):
        for X, Y in gamma_c_edges_on_segment(seg):
            edges.append((_point_at(seg, X), _point_at(seg, Y)))
    edges = sorted(set(edges))
    nodes = sorted({p for e in edges for p in e})
    return GammaC(tuple(nodes), tuple(edges))


def no_full_support(t: Tiling) -> bool:
    """No segment of the tiling (internal or on the boundary) supports every tile."""
    if t.N <= 3:
        raise ValueError("no_full_support needs N > 3")
    for seg in maximal_segments(t, include_boundary=True):
        if len(seg.tiles()) >= t.N:
            return False
    return True
