import re
import time

import pytest

from equitile.constructions import center3
from equitile.model import verify_tiling
from equitile.numeric import Q3, W
from equitile.search import (
    SearchNode,
    Searcher,
    SolveConfig,
    Verdict,
    candidate_placements,
    decide,
    fillable_rotations,
    root_node,
    solve,
    target_side,
)
from equitile.theory import TileShape, Verdict as ScreenVerdict

from reference_enum import reference_tiles

EQ = (1, 1, 1)
ISO = (1, 1, W)  # pi/6, pi/6, 2pi/3
HALF_EQ = (1, W, 2)  # pi/6, pi/3, pi/2
FIXTURES = [EQ, ISO, HALF_EQ]


def shape(sides):
    return TileShape.from_sides(*sides)


def test_spec_examples():
    o = solve(3, shape(ISO))
    assert o.verdict is Verdict.FOUND and verify_tiling(o.tiling).ok
    # same picture as the closed-form 3-tiling: corners plus the centroid
    ref = center3(o.tiling.side_length())
    pts = {p for t in o.tiling.tiles for p in t.points}
    assert pts == {p for t in ref.tiles for p in t.points}
    assert solve(4, shape(EQ)).verdict is Verdict.FOUND
    o = solve(2, shape(ISO))
    assert o.verdict is Verdict.EXHAUSTED and "Q(sqrt 3)" in o.stats.reason


@pytest.mark.parametrize("sides", FIXTURES, ids=["equilateral", "1-1-w", "1-w-2"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matches_reference_enumerator(sides, n):
    t = time.perf_counter()
    o = solve(n, shape(sides))
    assert time.perf_counter() - t < 5 and o.stats.nodes < 10**5
    ref = reference_tiles(n, sides)
    if ref is None:
        # side length outside the field: no tiling can exist
        assert o.verdict is Verdict.EXHAUSTED and o.stats.nodes == 0
    else:
        assert (o.verdict is Verdict.FOUND) == ref
    if o.found:
        assert verify_tiling(o.tiling).ok and o.tiling.N == n


def test_candidate_placements_examples():
    sh = shape(ISO)
    node = root_node(target_side(3, sh))
    both = candidate_placements(node, sh)
    assert len(both) == 2
    A = (Q3(0), Q3(0))
    assert all(A in p.points for p in both)
    assert len(candidate_placements(node, sh, anchors="first")) == 1


def _wedge_node(p1, p2):
    O = (Q3(0), Q3(0))
    return SearchNode((), ((O, p1), (p1, p2), (p2, O)))


def test_candidate_placements_narrow_corner():
    # angle at the origin is atan(7/24), about 16 degrees, below pi/6
    node = _wedge_node((Q3(24), Q3(0)), (Q3(24), Q3(7)))
    assert candidate_placements(node, shape(ISO)) == []


def test_candidate_placements_exact_corner():
    # corner of exactly pi/6: only the pi/6 angle of (1, w, 2) fits there
    node = _wedge_node((Q3(3), Q3(0)), (Q3(3), W))
    sh = shape(HALF_EQ)
    got = candidate_placements(node, sh)
    assert got
    O = (Q3(0), Q3(0))
    for tile in got:
        i = tile.points.index(O)
        p, q = tile.points[(i + 1) % 3], tile.points[(i + 2) % 3]
        # the edge opposite the corner is the short side a = 1
        d = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
        assert d == Q3(1)


def test_fillable_rotations():
    sh = shape(HALF_EQ)
    rots = fillable_rotations(sh.angles)
    straight = (Q3(-1), Q3(0))
    assert straight in rots and sh.alpha in rots
    # pi/6 multiples up to pi: six of them
    assert len(rots) == 6


def _walk(searcher, node, depth):
    """Follow first children a few levels, checking the area bookkeeping."""
    target2 = node.uncovered_area2()
    for _ in range(depth):
        placed2 = Q3(0)
        for t in node.placed:
            placed2 = placed2 + t.area2()
        assert node.uncovered_area2() + placed2 == target2
        assert node.depth <= searcher.n
        kids = list(searcher.children(node))
        if not kids:
            return
        node = kids[len(kids) // 2]


def test_node_area_invariant():
    sh = TileShape.from_sides(3, 8, 7)
    X = target_side(54, sh)
    s = Searcher(54, sh, X, SolveConfig())
    _walk(s, root_node(X), 30)


FOUND_CASES = [(6, HALF_EQ), (8, HALF_EQ), (9, EQ), (12, ISO), (3, ISO)]
EXHAUSTED_CASES = [(4, ISO), (3, EQ), (24, (3, 8, 7)), (10, (5, 8, 7))]


@pytest.mark.parametrize("n,sides", FOUND_CASES + EXHAUSTED_CASES)
def test_pruning_options_do_not_change_verdicts(n, sides):
    verdicts = set()
    for kw in (dict(), dict(edge_pruning=True), dict(corner_pruning=False),
               dict(corner_policy="fewest"), dict(corner_policy="fewest", edge_pruning=True)):
        o = solve(n, shape(sides), SolveConfig(**kw))
        verdicts.add(o.verdict)
        assert o.stats.max_depth <= n
        if o.found:
            assert verify_tiling(o.tiling).ok
    assert len(verdicts) == 1
    assert verdicts.pop() is (Verdict.FOUND if (n, sides) in FOUND_CASES else Verdict.EXHAUSTED)


@pytest.mark.parametrize("n,sides", [(8, HALF_EQ), (24, (3, 8, 7)), (12, ISO)])
def test_parallel_matches_serial(n, sides):
    serial = solve(n, shape(sides), SolveConfig(edge_pruning=True))
    counts = set()
    for width in (2, 3, 5):
        for det in (True, False):
            o = solve(n, shape(sides), SolveConfig(parallel_width=width, deterministic=det, edge_pruning=True))
            assert o.verdict is serial.verdict
            if o.found:
                assert verify_tiling(o.tiling).ok
        a = solve(n, shape(sides), SolveConfig(parallel_width=3, deterministic=True, edge_pruning=True))
        b = solve(n, shape(sides), SolveConfig(parallel_width=3, deterministic=True, edge_pruning=True))
        counts.add((a.stats.nodes, b.stats.nodes))
    assert all(x == y for x, y in counts)


def test_serial_node_counts_repeat():
    a = solve(24, shape((3, 8, 7)))
    b = solve(24, shape((3, 8, 7)))
    assert a.stats.nodes == b.stats.nodes > 0


def test_reflections_flag():
    o = solve(6, shape(HALF_EQ), SolveConfig(allow_reflections=False))
    if o.found:
        assert verify_tiling(o.tiling, allow_reflections=False).ok
        assert len({t.mirrored for t in o.tiling.tiles}) == 1


def test_limits():
    sh = shape((3, 8, 7))
    o = solve(54, sh, SolveConfig(node_limit=50))
    assert o.verdict is Verdict.LIMIT_REACHED and o.stats.reason == "node limit"
    o = solve(54, sh, SolveConfig(time_limit=0.2))
    assert o.verdict is Verdict.LIMIT_REACHED and o.stats.reason == "time limit"
    o = solve(54, sh, SolveConfig(node_limit=50, parallel_width=3))
    assert o.verdict is Verdict.LIMIT_REACHED
    with pytest.raises(ValueError):
        SolveConfig(node_limit=-1)
    with pytest.raises(ValueError):
        SolveConfig(parallel_width=0)
    with pytest.raises(ValueError):
        solve(0, sh)


def test_progress_stream():
    lines = []
    solve(24, shape((3, 8, 7)), SolveConfig(progress_interval=100), progress=lines.append)
    assert lines
    pat = re.compile(r"^depth=\d+ nodes=\d+ uncovered_area=\S+$")
    assert all(pat.match(x) for x in lines)


def test_decide():
    rep = decide(19)
    assert rep.screen is ScreenVerdict.EXCLUDED_PRIME and rep.rows == [] and rep.verdict == "ExcludedPrime"
    rep = decide(100)
    assert rep.rows == [] and rep.verdict == "NoTiling"
    rep = decide(24, SolveConfig(edge_pruning=True))
    assert [(r.M, r.tile) for r, _ in rep.rows] == [(4, (3, 8, 7))]
    assert rep.verdict == "NoTiling"
    rep = decide(54, SolveConfig(node_limit=10))
    assert rep.verdict == "LimitReached"
    with pytest.raises(ValueError):
        decide(2)
