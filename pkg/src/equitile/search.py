"""Exhaustive exact search for N-tilings of an equilateral triangle.

The uncovered part of the target is kept as its oriented boundary: a tuple of
directed edges with the uncovered region on their left. Placing a tile subtracts
its boundary from that chain, cancelling collinear opposite pieces. Each node is
extended only at the lexicographically least boundary vertex, where the corner is
convex, so every tiling is reached along exactly one path.
"""

from __future__ import annotations

import copy
import enum
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .geometry import (
    IDENTITY,
    ONE,
    ZERO,
    Point,
    Rotation,
    add,
    angle_less,
    cross,
    dot,
    half_turn_index,
    length,
    orient,
    rot_compose,
    rotate,
    rotation_between,
    scale,
    segment_meets_open_triangle,
    sub,
    unit,
)
from .model import PlacedTile, Tiling, equilateral_target, verify_tiling
from .numeric import Q3, q3_sqrt
from .theory import (
    CandidateRow,
    GammaCase,
    TileShape,
    Verdict as ScreenVerdict,
    enumerate_candidates,
    equilateral_side_squared,
    prime_screen,
)

Edge = Tuple[Point, Point]
STRAIGHT: Rotation = (-ONE, ZERO)


class Verdict(enum.Enum):
    FOUND = "Found"
    EXHAUSTED = "Exhausted"
    LIMIT_REACHED = "LimitReached"


@dataclass(frozen=True)
class SolveConfig:
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    allow_reflections: bool = True
    deterministic: bool = True
    parallel_width: int = 1
    # prune nodes whose new convex corners cannot be filled by tile angles
    corner_pruning: bool = True
    # prune nodes whose straight boundary runs are not sums of tile sides
    edge_pruning: bool = False
    # "lex": expand the least boundary vertex; "fewest": the convex corner with fewest placements
    corner_policy: str = "lex"
    progress_interval: int = 0

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit < 0:
            raise ValueError("node_limit must be nonnegative")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be nonnegative")
        if self.parallel_width < 1:
            raise ValueError("parallel_width must be >= 1")
        if self.corner_policy not in ("lex", "fewest"):
            raise ValueError("corner_policy must be 'lex' or 'fewest'")


@dataclass
class SolveStats:
    nodes: int = 0
    max_depth: int = 0
    elapsed: float = 0.0
    reason: str = ""


@dataclass
class SolveOutcome:
    verdict: Verdict
    stats: SolveStats
    tiling: Optional[Tiling] = None

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND


@dataclass(frozen=True)
class SearchNode:
    placed: Tuple[PlacedTile, ...]
    boundary: Tuple[Edge, ...]

    @property
    def depth(self) -> int:
        return len(self.placed)

    def uncovered_area2(self) -> Q3:
        """Twice the uncovered area (shoelace over the boundary chain)."""
        total = ZERO
        for p, q in self.boundary:
            total = total + cross(p, q)
        return total

    def next_corner(self) -> Optional[Point]:
        if not self.boundary:
            return None
        return min(p for p, _ in self.boundary)


def root_node(X: Q3) -> SearchNode:
    A, B, C = equilateral_target(X)
    return SearchNode((), ((A, B), (B, C), (C, A)))


# --- angle bookkeeping ---------------------------------------------------------

def fillable_rotations(angles: Sequence[Rotation]) -> frozenset:
    """Rotations of every nonempty sum of tile angles not exceeding pi."""
    seen = set()
    stack = [IDENTITY]
    while stack:
        cur = stack.pop()
        for r in angles:
            nxt = rot_compose(cur, r)
            if nxt in seen:
                continue
            if nxt[1].sign() > 0 or nxt == STRAIGHT:
                seen.add(nxt)
                if nxt != STRAIGHT:
                    stack.append(nxt)
    return frozenset(seen)


def _direction_less(o: Point, v1: Point, v2: Point) -> bool:
    """Is v1 reached before v2 turning counterclockwise from o?"""
    return angle_less((dot(o, v1), cross(o, v1)), (dot(o, v2), cross(o, v2)))


def wedges_at(boundary: Sequence[Edge], v: Point) -> List[Tuple[Point, Point]]:
    """Uncovered wedges at ``v`` as (outgoing direction, reversed incoming direction)."""
    outs = [sub(q, p) for p, q in boundary if p == v]
    ins = [sub(p, q) for p, q in boundary if q == v]
    if len(outs) == 1 and len(ins) == 1:
        return [(outs[0], ins[0])]
    out = []
    for o in outs:
        best = None
        for w in ins:
            if best is None or _direction_less(o, w, best):
                best = w
        if best is not None:
            out.append((o, best))
    return out


def _is_convex(o: Point, w: Point) -> bool:
    return cross(o, w).sign() > 0


# --- the searcher ----------------------------------------------------------------

@dataclass(frozen=True)
class _AngleSpec:
    index: int  # 0 alpha, 1 beta, 2 gamma
    rot: Rotation
    to_next: Q3  # side from this vertex to the next label's vertex
    to_prev: Q3


class _Budget(Exception):
    pass


class Searcher:
    def __init__(self, n: int, shape: TileShape, X: Q3, cfg: SolveConfig,
                 progress: Optional[Callable[[str], None]] = None):
        self.n = n
        self.shape = shape
        self.X = X
        self.cfg = cfg
        self.progress = progress
        sides = shape.sides
        specs = []
        for i in range(3):
            nxt, prv = (i + 1) % 3, (i + 2) % 3
            specs.append(_AngleSpec(i, shape.angles[i], sides[prv], sides[nxt]))
        self.specs = specs
        self.fillable = fillable_rotations(shape.angles)
        self.edge_sums: Dict[Q3, bool] = {}
        self.stats = SolveStats()
        self.started = time.monotonic()
        self.shared = None  # (_Shared, subtree index) in parallel workers

    # -- placements --

    def _unit(self, v: Point) -> Point:
        return unit(v)

    def placements_at(self, boundary: Sequence[Edge], v: Point, o: Point, w: Point,
                      anchors: str = "first") -> List[PlacedTile]:
        u = self._unit(o)
        wu = self._unit(w)
        seen = set()
        out = []
        frames = [(u, wu, False)]
        if anchors == "both":
            frames.append((wu, u, True))
        for base, other, clockwise in frames:
            for spec in self.specs:
                rot = spec.rot if not clockwise else (spec.rot[0], -spec.rot[1])
                r = rotate(base, rot)
                cr = cross(r, other).sign()
                if clockwise:
                    cr = -cr
                if cr < 0:
                    continue
                if cr > 0:
                    rem = rotation_between(r, other) if not clockwise else rotation_between(other, r)
                    if rem not in self.fillable:
                        continue
                for mirrored in (False, True):
                    if mirrored and not self.cfg.allow_reflections:
                        continue
                    # unmirrored: the next label's vertex lies along the anchor
                    along, turned = (spec.to_next, spec.to_prev)
                    if mirrored != clockwise:
                        along, turned = turned, along
                    p_along = add(v, scale(base, along))
                    p_turned = add(v, scale(r, turned))
                    if mirrored != clockwise:
                        p_next, p_prev = p_turned, p_along
                    else:
                        p_next, p_prev = p_along, p_turned
                    pts = [None, None, None]
                    pts[spec.index] = v
                    pts[(spec.index + 1) % 3] = p_next
                    pts[(spec.index + 2) % 3] = p_prev
                    key = frozenset(pts)
                    if key in seen:
                        continue
                    seen.add(key)
                    if self._fits(boundary, pts):
                        out.append(PlacedTile(*pts))
        return out

    @staticmethod
    def _fits(boundary: Sequence[Edge], pts) -> bool:
        tri = tuple(pts)
        for p, q in boundary:
            if segment_meets_open_triangle(p, q, tri):
                return False
        return True

    # -- chain update --

    def subtract(self, boundary: Sequence[Edge], tile: PlacedTile) -> Tuple[Edge, ...]:
        a, b, c = tile.points
        if orient(a, b, c) < 0:
            b, c = c, b
        edges = list(boundary)
        for p, q in ((b, a), (c, b), (a, c)):
            edges = _add_cancelling(edges, p, q)
        return tuple(edges)

    # -- pruning --

    def _corners_ok(self, boundary: Sequence[Edge], tile: PlacedTile) -> bool:
        for v in tile.points:
            for o, w in wedges_at(boundary, v):
                if _is_convex(o, w):
                    rot = rotation_between(self._unit(o), self._unit(w))
                    if rot not in self.fillable:
                        return False
        return True

    def _is_edge_sum(self, L: Q3) -> bool:
        hit = self.edge_sums.get(L)
        if hit is not None:
            return hit
        a, b, c = self.shape.sides
        ok = False
        rc = ZERO
        while not ok and rc <= L:
            rb = rc
            while rb <= L:
                rest = (L - rb) / a
                if rest.is_rational() and rest.r.denominator == 1:
                    ok = True
                    break
                rb = rb + b
            rc = rc + c
        self.edge_sums[L] = ok
        return ok

    def _runs_ok(self, boundary: Sequence[Edge]) -> bool:
        succ: Dict[Point, List[Point]] = {}
        pred: Dict[Point, List[Point]] = {}
        for p, q in boundary:
            succ.setdefault(p, []).append(q)
            pred.setdefault(q, []).append(p)

        def convex(v):
            if len(succ.get(v, ())) != 1 or len(pred.get(v, ())) != 1:
                return False
            return cross(sub(v, pred[v][0]), sub(succ[v][0], v)).sign() > 0

        for p, q in boundary:
            if not convex(p):
                continue
            d = sub(q, p)
            end = q
            while True:
                nxts = succ.get(end, ())
                if len(nxts) != 1 or len(pred.get(end, ())) != 1:
                    break
                e = sub(nxts[0], end)
                if cross(d, e).sign() != 0 or dot(d, e).sign() <= 0:
                    break
                end = nxts[0]
            if end == p or not convex(end):
                continue
            L = length(p, end)
            if L is None or not self._is_edge_sum(L):
                return False
        return True

    # -- expansion --

    def children(self, node: SearchNode, anchors: str = "first") -> Iterator[SearchNode]:
        if node.depth >= self.n:
            return
        if self.cfg.corner_policy == "fewest":
            tiles = self._most_constrained(node, anchors)
        else:
            # the least vertex sees the region inside a half-plane, so its wedge is convex
            v = node.next_corner()
            o, w = wedges_at(node.boundary, v)[0]
            tiles = self.placements_at(node.boundary, v, o, w, anchors)
        for tile in tiles:
            boundary = self.subtract(node.boundary, tile)
            if boundary:
                if node.depth + 1 >= self.n:
                    continue
                if self.cfg.corner_pruning and not self._corners_ok(boundary, tile):
                    continue
                if self.cfg.edge_pruning and not self._runs_ok(boundary):
                    continue
            yield SearchNode(node.placed + (tile,), boundary)

    def _most_constrained(self, node: SearchNode, anchors: str) -> List[PlacedTile]:
        """Placements at the convex corner with the fewest of them (empty if any corner is stuck)."""
        best = None
        for v in sorted({p for p, _ in node.boundary}):
            for o, w in wedges_at(node.boundary, v):
                if not _is_convex(o, w):
                    continue
                tiles = self.placements_at(node.boundary, v, o, w, anchors)
                if best is None or len(tiles) < len(best):
                    best = tiles
                    if len(best) <= 1:
                        return best
        return best or []

    def _tick(self, node: SearchNode) -> None:
        st = self.stats
        st.nodes += 1
        if node.depth > st.max_depth:
            st.max_depth = node.depth
        cfg = self.cfg
        if self.shared is not None:
            shared, index = self.shared
            with shared.lock:
                shared.nodes += 1
                total = shared.nodes
            if shared.stop or shared.best < index:
                raise _Budget("cancelled")
        else:
            total = st.nodes
        if cfg.node_limit is not None and total > cfg.node_limit:
            st.reason = "node limit"
            raise _Budget("node limit")
        if cfg.time_limit is not None and (st.nodes & 63) == 0:
            if time.monotonic() - self.started > cfg.time_limit:
                st.reason = "time limit"
                raise _Budget("time limit")
        if self.progress and cfg.progress_interval and st.nodes % cfg.progress_interval == 0:
            self.progress(f"depth={node.depth} nodes={st.nodes} uncovered_area={node.uncovered_area2() / 2}")

    def dfs(self, root: SearchNode) -> Optional[SearchNode]:
        """Depth-first search below ``root``; returns a complete node or None."""
        if not root.boundary:
            return root
        self._tick(root)
        stack = [self.children(root)]
        while stack:
            child = next(stack[-1], None)
            if child is None:
                stack.pop()
                continue
            if not child.boundary:
                if child.depth > self.stats.max_depth:
                    self.stats.max_depth = child.depth
                return child
            self._tick(child)
            stack.append(self.children(child))
        return None

    def to_tiling(self, node: SearchNode) -> Tiling:
        return Tiling(equilateral_target(self.X), self.shape, node.placed)


def _add_cancelling(edges: List[Edge], P: Point, Q: Point) -> List[Edge]:
    """Add directed segment P->Q to a boundary chain, cancelling opposite overlaps."""
    d = sub(Q, P)
    L2 = dot(d, d)
    covered = []
    out = []
    for e in edges:
        E0, E1 = e
        if orient(P, Q, E0) == 0 and orient(P, Q, E1) == 0 and dot(sub(E1, E0), d).sign() < 0:
            t0 = dot(sub(E0, P), d)
            t1 = dot(sub(E1, P), d)
            lo = t1 if t1.sign() > 0 else ZERO
            hi = t0 if t0 < L2 else L2
            if lo < hi:
                if L2 < t0:
                    out.append((E0, Q))
                if t1.sign() < 0:
                    out.append((P, E1))
                covered.append((lo, hi, E1 if t1.sign() >= 0 else P, E0 if not L2 < t0 else Q))
                continue
        out.append(e)
    covered.sort(key=lambda c: c[0])
    cur_t, cur_p = ZERO, P
    for lo, hi, plo, phi in covered:
        if cur_t < lo:
            out.append((cur_p, plo))
        if cur_t < hi:
            cur_t, cur_p = hi, phi
    if cur_t < L2:
        out.append((cur_p, Q))
    return out


# --- public entry points -------------------------------------------------------------

def candidate_placements(node: SearchNode, shape: TileShape, cfg: Optional[SolveConfig] = None,
                         anchors: str = "both") -> List[PlacedTile]:
    """Placements covering the active corner of ``node``.

    ``anchors="both"`` lays a tile edge along either corner edge. The solver
    itself uses ``"first"`` (outgoing edge only): at a convex corner the tile met
    first counterclockwise always has an edge there, so nothing is lost.
    """
    cfg = cfg or SolveConfig()
    if not node.boundary:
        return []
    s = Searcher(1, shape, ONE, cfg)
    v = node.next_corner()
    o, w = wedges_at(node.boundary, v)[0]
    return s.placements_at(node.boundary, v, o, w, anchors)


def target_side(n: int, shape: TileShape) -> Optional[Q3]:
    return q3_sqrt(equilateral_side_squared(n, shape))


def solve(n: int, shape: TileShape, cfg: Optional[SolveConfig] = None,
          progress: Optional[Callable[[str], None]] = None) -> SolveOutcome:
    """Decide by exhaustive search whether ``n`` copies of ``shape`` tile an equilateral triangle."""
    if n < 1:
        raise ValueError("N must be >= 1")
    cfg = cfg or SolveConfig()
    t0 = time.monotonic()
    X = target_side(n, shape)
    if X is None:
        # every side is a sum of tile edges, so it would lie in Q(sqrt 3)
        st = SolveStats(reason="side length not in Q(sqrt 3)")
        return SolveOutcome(Verdict.EXHAUSTED, st)
    searcher = Searcher(n, shape, X, cfg, progress)
    if cfg.edge_pruning and not searcher._is_edge_sum(X):
        st = SolveStats(reason="side length is not a sum of tile sides")
        return SolveOutcome(Verdict.EXHAUSTED, st)
    root = root_node(X)
    if cfg.parallel_width > 1:
        outcome = _solve_parallel(searcher, root)
    else:
        try:
            found = searcher.dfs(root)
        except _Budget as exc:
            searcher.stats.elapsed = time.monotonic() - t0
            searcher.stats.reason = str(exc)
            return SolveOutcome(Verdict.LIMIT_REACHED, searcher.stats)
        if found is None:
            outcome = SolveOutcome(Verdict.EXHAUSTED, searcher.stats)
        else:
            outcome = SolveOutcome(Verdict.FOUND, searcher.stats, searcher.to_tiling(found))
    outcome.stats.elapsed = time.monotonic() - t0
    if outcome.tiling is not None:
        report = verify_tiling(outcome.tiling, cfg.allow_reflections)
        assert report.ok, report.violations
    return outcome


# --- parallel fan-out ------------------------------------------------------------

class _Shared:
    """State shared by subtree workers: node counter, stop flag, least found index."""

    def __init__(self, nodes: int, width: int):
        self.lock = threading.Lock()
        self.nodes = nodes
        self.stop = False
        self.best = width


def _frontier(searcher: Searcher, root: SearchNode, width: int):
    """Breadth-first expansion until at least ``width`` open nodes (DFS order kept)."""
    level = [root]
    while level and len(level) < width:
        nxt = []
        for node in level:
            searcher._tick(node)
            for child in searcher.children(node):
                if not child.boundary:
                    return child, []
                nxt.append(child)
        level = nxt
    return None, level


def _run_subtree(parent: Searcher, shared: _Shared, index: int, node: SearchNode):
    s = copy.copy(parent)
    s.stats = SolveStats()
    s.shared = (shared, index)
    if shared.best < index:
        return "skipped", None, s.stats
    try:
        found = s.dfs(node)
    except _Budget as exc:
        return ("cancelled" if str(exc) == "cancelled" else "limit"), None, s.stats
    if found is None:
        return "exhausted", None, s.stats
    with shared.lock:
        shared.best = min(shared.best, index)
        if not s.cfg.deterministic:
            shared.stop = True
    return "found", found, s.stats


def _solve_parallel(searcher: Searcher, root: SearchNode) -> SolveOutcome:
    width = searcher.cfg.parallel_width
    try:
        done, frontier = _frontier(searcher, root, width)
    except _Budget as exc:
        searcher.stats.reason = str(exc)
        return SolveOutcome(Verdict.LIMIT_REACHED, searcher.stats)
    if done is not None:
        return SolveOutcome(Verdict.FOUND, searcher.stats, searcher.to_tiling(done))
    shared = _Shared(searcher.stats.nodes, len(frontier))
    with ThreadPoolExecutor(max_workers=width) as pool:
        futures = [pool.submit(_run_subtree, searcher, shared, i, node)
                   for i, node in enumerate(frontier)]
        results = []
        for f in futures:
            res = f.result()
            if res[0] == "limit":
                shared.stop = True
            results.append(res)
    stats = searcher.stats
    found = None
    limit_reason = ""
    for status, node, st in results:
        stats.nodes += st.nodes
        stats.max_depth = max(stats.max_depth, st.max_depth)
        if status == "found":
            found = node
            if searcher.cfg.deterministic:
                # subtrees after the first success are cancelled; counts up to here are stable
                break
        elif status == "limit":
            limit_reason = limit_reason or st.reason
    if found is not None:
        return SolveOutcome(Verdict.FOUND, stats, searcher.to_tiling(found))
    if any(r[0] == "limit" for r in results):
        stats.reason = limit_reason or "limit"
        return SolveOutcome(Verdict.LIMIT_REACHED, stats)
    return SolveOutcome(Verdict.EXHAUSTED, stats)


# --- decision pipeline -----------------------------------------------------------------

@dataclass
class DecideReport:
    N: int
    screen: ScreenVerdict
    rows: List[Tuple[CandidateRow, SolveOutcome]] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.screen is ScreenVerdict.EXCLUDED_PRIME:
            return "ExcludedPrime"
        if any(o.found for _, o in self.rows):
            return "Found"
        if any(o.verdict is Verdict.LIMIT_REACHED for _, o in self.rows):
            return "LimitReached"
        return "NoTiling"


def decide(n: int, cfg: Optional[SolveConfig] = None, full_range: bool = True,
           progress: Optional[Callable[[str], None]] = None) -> DecideReport:
    """Screen N, list the pi/3 candidate tiles and search each one."""
    if n < 3:
        raise ValueError("decide needs N >= 3")
    screen = prime_screen(n, GammaCase.PI_OVER_3)
    report = DecideReport(n, screen)
    if screen is ScreenVerdict.EXCLUDED_PRIME:
        return report
    for row in enumerate_candidates(n, full_range=full_range):
        report.rows.append((row, solve(n, row.shape(), cfg, progress)))
    return report
