"""Command-line interface: ``equitile <subcommand> ...``.

Exit codes: 0 success or verdict computed, 1 verification failed,
2 usage error, 3 resource limit reached.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import constructions
from .io import TilingParseError, read_tiling, serialize_tiling, write_tiling
from .model import (
    DegenerateLabelsError,
    HypothesisViolation,
    TilingError,
    build_gamma_c,
    check_coloring_equation,
    compute_coloring,
    decompose_side,
    find_relation_witnesses,
    is_regular,
    maximal_segments,
    no_full_support,
    vertex_census,
    verify_tiling,
)
from .numeric import format_q3, parse_q3, squarefree_part
from .render import RenderOptions, render_svg
from .search import SolveConfig, Verdict, decide, solve
from .theory import (
    GammaCase,
    ShapeError,
    TileShape,
    enumerate_candidates,
    feasible_two_pi_three,
    format_table,
    prime_screen,
    reproduce_table,
    tile_from_nm,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _q3_arg(text):
    try:
        return parse_q3(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed Q3 literal: {text!r}") from None


def _int_of(x, what):
    if not x.is_rational() or x.r.denominator != 1:
        raise UsageError(f"{what} must be an integer, got {format_q3(x)}")
    return int(x.r)


def _pos_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _add_limits(p):
    p.add_argument("--nodes", type=int, help="node limit")
    p.add_argument("--time", type=float, help="time limit in seconds")
    p.add_argument("--threads", type=_pos_int, default=1, help="subtree workers")
    p.add_argument("--deterministic", action="store_true",
                   help="merge parallel results in subtree order (always on for one thread)")
    p.add_argument("--no-reflections", action="store_true", help="allow direct congruences only")
    p.add_argument("--edge-pruning", action="store_true", help="prune boundary runs that are not sums of sides")
    p.add_argument("--policy", choices=["lex", "fewest"], default="lex",
                   help="corner choice: lowest-left corner, or the one with the fewest placements")
    p.add_argument("--progress", type=int, default=0, metavar="K", help="print a progress line every K nodes")


def _config(args) -> SolveConfig:
    return SolveConfig(
        node_limit=args.nodes,
        time_limit=args.time,
        allow_reflections=not args.no_reflections,
        deterministic=args.deterministic or args.threads == 1,
        parallel_width=args.threads,
        edge_pruning=args.edge_pruning,
        corner_policy=args.policy,
        progress_interval=args.progress,
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="equitile", description="N-tilings of an equilateral triangle")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("table", help="candidate (N, M, tile) rows")
    p.add_argument("--max", type=_pos_int, required=True, dest="max_n")
    p.add_argument("--full", action="store_true", help="scan every M with M^2 < N")

    p = sub.add_parser("candidates", help="candidate tiles for one N")
    p.add_argument("N", type=_q3_arg)
    p.add_argument("--full", action="store_true")

    p = sub.add_parser("tile", help="tile fixed by N and coloring number M")
    p.add_argument("N", type=_q3_arg)
    p.add_argument("M", type=_q3_arg)

    p = sub.add_parser("screen", help="prime screen")
    p.add_argument("N", type=_q3_arg)
    p.add_argument("--case", choices=["pi3", "2pi3"], default="pi3")

    p = sub.add_parser("screen2", help="feasibility of a 2pi/3 tile")
    for name in ("N", "a", "b", "c"):
        p.add_argument(name, type=_q3_arg)

    p = sub.add_parser("construct", help="write a closed-form tiling")
    p.add_argument("kind", choices=sorted(constructions.CONSTRUCTIONS))
    p.add_argument("--side", type=_q3_arg, required=True)
    p.add_argument("--n", type=_q3_arg)
    p.add_argument("--m", type=_q3_arg)
    p.add_argument("-o", "--output")

    for name in ("verify", "color", "analyze"):
        p = sub.add_parser(name)
        p.add_argument("file")
        if name == "verify":
            p.add_argument("--no-reflections", action="store_true")

    p = sub.add_parser("solve", help="exhaustive search for one tile")
    p.add_argument("N", type=_q3_arg)
    p.add_argument("--tile", help="side lengths a,b,c (default: every pi/3 candidate for N)")
    p.add_argument("--case", choices=["pi3", "2pi3", "other"])
    p.add_argument("-o", "--output")
    _add_limits(p)

    p = sub.add_parser("decide", help="screen, enumerate candidates and search each")
    p.add_argument("N", type=_q3_arg)
    p.add_argument("--table-range", action="store_true", help="use the table's M range instead of every M")
    _add_limits(p)

    p = sub.add_parser("render", help="SVG picture of a tiling")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--coloring", action="store_true")
    p.add_argument("--orientation", action="store_true", help="shade mirrored tiles")
    p.add_argument("--width", type=int, default=512)
    return ap


# --- subcommands ----------------------------------------------------------------

def cmd_table(args, out):
    out.write(format_table(reproduce_table(args.max_n, full_range=args.full)))
    return EXIT_OK


def cmd_candidates(args, out):
    N = _int_of(args.N, "N")
    for row in enumerate_candidates(N, full_range=args.full):
        out.write(row.format() + "\n")
    return EXIT_OK


def cmd_tile(args, out):
    N, M = _int_of(args.N, "N"), _int_of(args.M, "M")
    try:
        row = tile_from_nm(N, M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(("none" if row is None else row.format()) + "\n")
    return EXIT_OK


def cmd_screen(args, out):
    N = _int_of(args.N, "N")
    case = GammaCase(args.case)
    out.write(f"{N} {prime_screen(N, case).value}\n")
    return EXIT_OK


def cmd_screen2(args, out):
    N, a, b, c = (_int_of(x, n) for x, n in ((args.N, "N"), (args.a, "a"), (args.b, "b"), (args.c, "c")))
    rep = feasible_two_pi_three(N, a, b, c)
    if rep.passed:
        out.write(f"passed side={rep.side}\n")
    else:
        out.write("failed " + " ".join(rep.failures) + "\n")
    return EXIT_OK


def cmd_construct(args, out):
    kind = args.kind
    if args.side.sign() <= 0:
        raise UsageError("--side must be positive")
    fn = constructions.CONSTRUCTIONS[kind]
    if kind == "quadratic":
        if args.n is None:
            raise UsageError("quadratic needs --n")
        t = fn(args.side, _int_of(args.n, "--n"))
    elif kind in ("hex3m2", "six_m2"):
        if args.m is None:
            raise UsageError(f"{kind} needs --m")
        t = fn(args.side, _int_of(args.m, "--m"))
    else:
        t = fn(args.side)
    _emit_tiling(t, args.output, out)
    return EXIT_OK


def _emit_tiling(t, path, out):
    if path:
        write_tiling(t, path)
    else:
        out.write(serialize_tiling(t))


def cmd_verify(args, out):
    t = read_tiling(args.file)
    rep = verify_tiling(t, allow_reflections=not args.no_reflections)
    if rep.ok:
        out.write(f"ok N={t.N}\n")
        return EXIT_OK
    out.write("failed\n")
    for v in rep.violations:
        out.write(f"  {v}\n")
    return EXIT_FAILED


def cmd_color(args, out):
    t = read_tiling(args.file)
    try:
        col = compute_coloring(t)
    except HypothesisViolation as exc:
        out.write("hypotheses violated\n")
        for p, clause in exc.violations:
            out.write(f"  {clause} at ({format_q3(p[0])}, {format_q3(p[1])})\n")
        return EXIT_OK
    eq = check_coloring_equation(t, col)
    out.write(f"M={col.M} black={col.black} white={col.white} equation={'holds' if eq else 'fails'}\n")
    return EXIT_OK


def cmd_analyze(args, out):
    t = read_tiling(args.file)
    census = vertex_census(t)
    kinds = {}
    for v in census:
        kinds[v.kind] = kinds.get(v.kind, 0) + 1
    out.write(f"N={t.N} side={format_q3(t.side_length())}\n")
    out.write("vertices " + " ".join(f"{k}={kinds[k]}" for k in sorted(kinds)) + "\n")
    out.write(f"regular {is_regular(t, census)}\n")
    p, q, r = decompose_side(t, "AB")
    out.write(f"side AB = {p}a + {q}b + {r}c\n")
    out.write(f"maximal segments {len(maximal_segments(t))}\n")
    try:
        wit = find_relation_witnesses(t)
        gc = build_gamma_c(t)
        out.write(f"relation witnesses {len(wit)}\n")
        for w in wit:
            out.write(f"  {w.form} j={w.j} l={w.l} m={w.m}\n")
        out.write(f"gamma_c nodes={len(gc.nodes)} edges={len(gc.edges)}\n")
    except DegenerateLabelsError as exc:
        out.write(f"relation analysis skipped: {exc}\n")
    if t.N > 3:
        out.write(f"no_full_support {no_full_support(t)}\n")
    return EXIT_OK


def _parse_tile(text) -> TileShape:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--tile needs three comma-separated side lengths")
    try:
        sides = [parse_q3(x.strip()) for x in parts]
        return TileShape.from_sides(*sides)
    except (ValueError, ShapeError) as exc:
        raise UsageError(f"bad --tile: {exc}") from None


def _progress(err):
    def emit(line):
        err.write(line + "\n")
        err.flush()
    return emit


def _report(outcome, out):
    st = outcome.stats
    line = f"{outcome.verdict.value} nodes={st.nodes} max_depth={st.max_depth} elapsed={st.elapsed:.2f}s"
    if st.reason:
        line += f" reason={st.reason!r}"
    out.write(line + "\n")


def cmd_solve(args, out, err):
    N = _int_of(args.N, "N")
    if N < 1:
        raise UsageError("N must be >= 1")
    cfg = _config(args)
    if args.tile:
        shapes = [_parse_tile(args.tile)]
    else:
        shapes = [row.shape() for row in enumerate_candidates(N, full_range=True)]
        if not shapes:
            out.write("no candidate tiles\n")
            return EXIT_OK
    if args.case:
        for sh in shapes:
            if sh.gamma_case.value != args.case:
                raise UsageError(f"tile has gamma case {sh.gamma_case.value}, not {args.case}")
    code = EXIT_OK
    for sh in shapes:
        out.write(f"tile {format_q3(sh.a)} {format_q3(sh.b)} {format_q3(sh.c)}\n")
        outcome = solve(N, sh, cfg, _progress(err) if args.progress else None)
        _report(outcome, out)
        if outcome.verdict is Verdict.LIMIT_REACHED:
            code = EXIT_LIMIT
        if outcome.found:
            if args.output:
                write_tiling(outcome.tiling, args.output)
            else:
                out.write(serialize_tiling(outcome.tiling))
            return EXIT_OK
    return code


def cmd_decide(args, out, err):
    N = _int_of(args.N, "N")
    if N < 3:
        raise UsageError("decide needs N >= 3")
    rep = decide(N, _config(args), full_range=not args.table_range,
                 progress=_progress(err) if args.progress else None)
    out.write(f"N={N} screen={rep.screen.value} squarefree={squarefree_part(N)}\n")
    for row, outcome in rep.rows:
        out.write(f"candidate M={row.M} tile=({row.a},{row.b},{row.c}) ")
        _report(outcome, out)
    out.write(f"verdict {rep.verdict}\n")
    return EXIT_LIMIT if rep.verdict == "LimitReached" else EXIT_OK


def cmd_render(args, out):
    t = read_tiling(args.file)
    mode = "coloring" if args.coloring else ("by_orientation" if args.orientation else "outline")
    try:
        opts = RenderOptions(width_px=args.width, color_mode=mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    col = compute_coloring(t) if args.coloring else None
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(render_svg(t, col, opts))
    out.write(f"wrote {args.output}\n")
    return EXIT_OK


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    handlers = {
        "table": cmd_table, "candidates": cmd_candidates, "tile": cmd_tile,
        "screen": cmd_screen, "screen2": cmd_screen2, "construct": cmd_construct,
        "verify": cmd_verify, "color": cmd_color, "analyze": cmd_analyze,
        "render": cmd_render,
    }
    try:
        if args.cmd in ("solve", "decide"):
            return (cmd_solve if args.cmd == "solve" else cmd_decide)(args, out, err)
        return handlers[args.cmd](args, out)
    except UsageError as exc:
        err.write(f"equitile: error: {exc}\n")
        return EXIT_USAGE
    except (TilingParseError, OSError) as exc:
        err.write(f"equitile: error: {exc}\n")
        return EXIT_USAGE
    except HypothesisViolation as exc:
        err.write(f"equitile: coloring hypotheses fail: {', '.join(exc.clauses())}\n")
        return EXIT_FAILED
    except TilingError as exc:
        err.write(f"equitile: error: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
