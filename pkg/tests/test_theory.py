import math
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from equitile.geometry import IDENTITY, rot_compose
from equitile.numeric import Q3, W, Zeta3, is_prime, squarefree_part
from equitile.theory import (
    CandidateRow,
    GammaCase,
    ShapeError,
    TileShape,
    Verdict,
    check_lemma_ab,
    enumerate_candidates,
    equilateral_side_squared,
    feasible_two_pi_three,
    format_table,
    prime_screen,
    reproduce_table,
    squarefree_compatible,
    tile_from_nm,
    verify_zeta_quadratic,
    zeta_of_row,
)

GOLDEN = Path(__file__).parent / "golden" / "table_200.txt"


def sage_loop_oracle(max_n):
    """The original Sage loop, transcribed with sympy doing the integer work."""
    rows = []
    for N in range(3, max_n + 1):
        # sage's range(1, sqrt(N)) stops below floor(sqrt(N))
        for M in range(1, int(sympy.floor(sympy.sqrt(N)))):
            x = (9 * N - M * M) * (N - M * M)
            k = sympy.sqrt(x)
            if not k.is_integer:
                continue
            den = 3 * N - M * M
            num = 3 * N + M * M
            A, B, C = num - k, num + k, 2 * den
            assert C**2 == A**2 + B**2 - A * B
            g = sympy.gcd(A, sympy.gcd(B, C))
            rows.append((N, M, int(A / g), int(B / g), int(C / g)))
    return rows


def test_table_matches_golden_and_is_fast():
    t = time.perf_counter()
    text = format_table(reproduce_table(200))
    assert time.perf_counter() - t < 1.0
    assert text == GOLDEN.read_text()


def test_table_matches_sage_loop():
    got = [(r.N, r.M, r.a, r.b, r.c) for r in reproduce_table(200)]
    assert got == sage_loop_oracle(200)


def test_table_edges():
    assert reproduce_table(53) == []
    assert [r.tile for r in reproduce_table(54)] == [(3, 8, 7)]
    rows = reproduce_table(200)
    assert (rows[0].N, rows[0].M, rows[0].tile) == (54, 6, (3, 8, 7))
    assert (rows[-1].N, rows[-1].M, rows[-1].tile) == (198, 10, (72, 275, 247))


def test_tile_from_nm_examples():
    assert tile_from_nm(54, 6).tile == (3, 8, 7)
    assert tile_from_nm(70, 5).tile == (7, 40, 37)
    assert tile_from_nm(4, 1) is None
    with pytest.raises(ValueError):
        tile_from_nm(9, 3)
    with pytest.raises(ValueError):
        tile_from_nm(9, 0)


def test_enumerate_examples():
    assert [(r.M, r.tile) for r in enumerate_candidates(105)] == [(7, (5, 21, 19)), (9, (7, 15, 13))]
    assert enumerate_candidates(7) == []
    assert enumerate_candidates(100) == []


def test_full_range_adds_only_boundary_m():
    table = {(r.N, r.M) for r in reproduce_table(200)}
    full = reproduce_table(200, full_range=True)
    for r in full:
        if (r.N, r.M) not in table:
            # the Sage loop stops one short of floor(sqrt(N))
            assert r.M == math.isqrt(r.N) and r.M * r.M != r.N
    assert table <= {(r.N, r.M) for r in full}
    # M = 10, N = 105 only shows up in the full scan
    assert (105, 10) in {(r.N, r.M) for r in full}


def test_prime_exclusion_instances():
    t = time.perf_counter()
    for p in sympy.primerange(5, 10000):
        assert enumerate_candidates(p) == []
        assert enumerate_candidates(p, full_range=True) == []
    assert time.perf_counter() - t < 10


def test_row_identities():
    for row in reproduce_table(200, full_range=True):
        a, b, c = row.tile
        assert c * c == a * a + b * b - a * b
        assert math.gcd(a, b, c) == 1
        assert row.M ** 2 < row.N
        assert check_lemma_ab(row)
        assert verify_zeta_quadratic(row) == Zeta3(0)
        assert a < c < b


def test_lemma_ab_examples():
    assert check_lemma_ab(CandidateRow(54, 6, 3, 8, 7))
    assert check_lemma_ab(CandidateRow(66, 4, 11, 96, 91))
    assert not check_lemma_ab(CandidateRow(54, 6, 3, 8, 8))
    # oracle: ab/c^2 vs 4M^2N/(3N-M^2)^2 computed independently
    assert Fraction(24, 49) == Fraction(4 * 36 * 54, 126**2)


def test_zeta_quadratic():
    row = CandidateRow(54, 6, 3, 8, 7)
    assert zeta_of_row(row) == Zeta3(Fraction(13, 14), Fraction(3, 14))
    assert verify_zeta_quadratic(CandidateRow(70, 5, 7, 40, 37)) == Zeta3(0)
    assert verify_zeta_quadratic(row, M=5) != Zeta3(0)
    # zeta = e^{i alpha} with cos alpha from the law of cosines, cross-checked in floats
    z = complex(zeta_of_row(row))
    assert abs(z - complex(math.cos(math.acos(13 / 14)), math.sin(math.acos(13 / 14)))) < 1e-12


def test_scale_invariance():
    for row in reproduce_table(200):
        for t in (2, 3):
            other = tile_from_nm(row.N * t * t, row.M * t)
            assert other is not None and other.tile == row.tile


def test_prime_screen():
    assert prime_screen(19, GammaCase.PI_OVER_3) is Verdict.EXCLUDED_PRIME
    assert prime_screen(3, GammaCase.TWO_PI_OVER_3) is Verdict.TOO_SMALL
    assert prime_screen(54, GammaCase.PI_OVER_3) is Verdict.NOT_EXCLUDED
    assert prime_screen(7, GammaCase.TWO_PI_OVER_3) is Verdict.EXCLUDED_PRIME


def test_squarefree_coherence():
    parts = {r.N: squarefree_part(r.N) for r in reproduce_table(200) if r.tile == (3, 8, 7)}
    assert parts == {54: 6, 96: 6, 150: 6}
    assert squarefree_compatible(54, 96)
    assert squarefree_compatible(54, 150)
    assert not squarefree_compatible(54, 70)


def test_two_pi_three():
    rep = feasible_two_pi_three(10935, 3, 5, 7)
    assert rep.passed and rep.side == 405
    assert 10935 * 15 == 405**2
    rep = feasible_two_pi_three(7, 3, 5, 7)
    assert not rep.passed and "ExcludedPrime" in rep.failures
    rep = feasible_two_pi_three(12, 1, 1, 2)
    assert not rep.passed and "LawOfCosines" in rep.failures


def test_shape_from_sides():
    sh = TileShape.from_sides(3, 8, 7)
    assert sh.gamma_case is GammaCase.PI_OVER_3
    assert sh.gamma == (Q3(Fraction(1, 2)), W / 2)
    total = rot_compose(rot_compose(sh.alpha, sh.beta), sh.gamma)
    assert total == (Q3(-1), Q3(0))
    for c, s in sh.angles:
        assert c * c + s * s == Q3(1)
    assert TileShape.from_sides(3, 5, 7).gamma_case is GammaCase.TWO_PI_OVER_3
    assert TileShape.from_sides(1, W, 2).gamma_case is GammaCase.OTHER
    with pytest.raises(ShapeError):
        TileShape.from_sides(1, 2, 3)
    with pytest.raises(ShapeError):
        TileShape.from_sides(1, 1, -1)


def test_area_equation():
    # X^2 = N a b in both cases, and 36^2 = 54 * 24 for the first row
    assert equilateral_side_squared(54, TileShape.from_sides(3, 8, 7)) == Q3(1296)
    assert equilateral_side_squared(10935, TileShape.from_sides(3, 5, 7)) == Q3(405**2)
    assert equilateral_side_squared(3, TileShape.from_sides(1, 1, W)) == Q3(3)
