"""Number-theoretic screening of N-tilings and exact tile shapes.

For a tile with a pi/3 angle the coloring number M and N fix the tile; the
closed form used here produces the integer side triple directly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .geometry import HALF, ONE, SQRT3, ZERO, Rotation, rot_compose
from .numeric import Q3, Zeta3, is_perfect_square, is_prime, q3_sqrt, squarefree_part


class GammaCase(enum.Enum):
    PI_OVER_3 = "pi3"
    TWO_PI_OVER_3 = "2pi3"
    # rational-angle tiles such as (1, sqrt3, 2), used only by the search and constructions
    OTHER = "other"


class Verdict(enum.Enum):
    EXCLUDED_PRIME = "ExcludedPrime"
    NOT_EXCLUDED = "NotExcluded"
    TOO_SMALL = "TooSmall"


class ShapeError(ValueError):
    pass


def _q3(x) -> Q3:
    return x if isinstance(x, Q3) else Q3(x)


@dataclass(frozen=True)
class TileShape:
    """A triangle with exact sides ``(a, b, c)`` and exact angle rotations.

    ``alpha`` is opposite ``a``, ``beta`` opposite ``b``, ``gamma`` opposite ``c``.
    """

    a: Q3
    b: Q3
    c: Q3
    gamma_case: GammaCase
    alpha: Rotation
    beta: Rotation
    gamma: Rotation

    @classmethod
    def from_sides(cls, a, b, c) -> "TileShape":
        a, b, c = _q3(a), _q3(b), _q3(c)
        if a.sign() <= 0 or b.sign() <= 0 or c.sign() <= 0:
            raise ShapeError("sides must be positive")
        if not (a + b > c and b + c > a and a + c > b):
            raise ShapeError("sides violate the strict triangle inequality")
        a2, b2, c2 = a * a, b * b, c * c
        cos_g = (a2 + b2 - c2) / (2 * a * b)
        sin_g = q3_sqrt(ONE - cos_g * cos_g)
        if sin_g is None:
            raise ShapeError("tile angles do not have sines in Q(sqrt 3)")
        cos_a = (b2 + c2 - a2) / (2 * b * c)
        cos_b = (a2 + c2 - b2) / (2 * a * c)
        # law of sines
        sin_a = a * sin_g / c
        sin_b = b * sin_g / c
        if cos_g == -HALF:
            case = GammaCase.TWO_PI_OVER_3
        elif cos_g == HALF:
            case = GammaCase.PI_OVER_3
        else:
            case = GammaCase.OTHER
        shape = cls(a, b, c, case, (cos_a, sin_a), (cos_b, sin_b), (cos_g, sin_g))
        shape.check()
        return shape

    def check(self) -> None:
        for cs in (self.alpha, self.beta, self.gamma):
            if cs[0] * cs[0] + cs[1] * cs[1] != ONE:
                raise ShapeError("angle pair is not a unit vector")
        total = rot_compose(rot_compose(self.alpha, self.beta), self.gamma)
        if total != (-ONE, ZERO):
            raise ShapeError("angles do not sum to pi")
        a2, b2, c2 = self.a * self.a, self.b * self.b, self.c * self.c
        if self.gamma_case is GammaCase.PI_OVER_3 and c2 != a2 + b2 - self.a * self.b:
            raise ShapeError("law of cosines fails for gamma = pi/3")
        if self.gamma_case is GammaCase.TWO_PI_OVER_3 and c2 != a2 + b2 + self.a * self.b:
            raise ShapeError("law of cosines fails for gamma = 2pi/3")

    @property
    def sides(self) -> Tuple[Q3, Q3, Q3]:
        return (self.a, self.b, self.c)

    @property
    def angles(self) -> Tuple[Rotation, Rotation, Rotation]:
        return (self.alpha, self.beta, self.gamma)

    def area2(self) -> Q3:
        """Twice the tile area, ``a*b*sin(gamma)``."""
        return self.a * self.b * self.gamma[1]

    def is_scalene(self) -> bool:
        return self.a != self.b and self.b != self.c and self.a != self.c

    def scaled(self, k) -> "TileShape":
        k = _q3(k)
        return TileShape(self.a * k, self.b * k, self.c * k, self.gamma_case,
                         self.alpha, self.beta, self.gamma)

    def side_squares(self) -> Tuple[Q3, Q3, Q3]:
        return (self.a * self.a, self.b * self.b, self.c * self.c)


def equilateral_side_squared(n: int, shape: TileShape) -> Q3:
    """X^2 for an equilateral target of N tiles: N*a*b*sin(gamma)/sin(pi/3)."""
    return n * shape.area2() * 2 / SQRT3


# --- candidate rows ----------------------------------------------------------

@dataclass(frozen=True, order=True)
class CandidateRow:
    N: int
    M: int
    a: int
    b: int
    c: int

    @property
    def tile(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def check_invariants(self) -> None:
        N, M, a, b, c = self.N, self.M, self.a, self.b, self.c
        assert 1 <= M and M * M < N
        assert math.gcd(a, b, c) == 1
        assert c * c == a * a + b * b - a * b
        assert is_perfect_square((9 * N - M * M) * (N - M * M))[0]

    def shape(self) -> TileShape:
        return TileShape.from_sides(self.a, self.b, self.c)

    def format(self) -> str:
        return f"{self.N} {self.M} {self.a} {self.b} {self.c}"


def tile_from_nm(N: int, M: int) -> Optional[CandidateRow]:
    """Integer tile determined by N and coloring number M, or None."""
    if M < 1 or M * M >= N:
        raise ValueError(f"need 1 <= M and M^2 < N (got N={N}, M={M})")
    ok, k = is_perfect_square((9 * N - M * M) * (N - M * M))
    if not ok or k == 0:
        return None
    num = 3 * N + M * M
    A = num - k
    B = num + k
    C = 2 * (3 * N - M * M)
    assert C * C == A * A + B * B - A * B
    g = math.gcd(A, B, C)
    return CandidateRow(N, M, A // g, B // g, C // g)


def enumerate_candidates(N: int, full_range: bool = False) -> List[CandidateRow]:
    """Candidate rows for N in ascending M.

    By default M runs over ``range(1, isqrt(N))``, the loop that generated the
    reference table (it never reaches ``M = isqrt(N)`` when N is not a square).
    ``full_range=True`` scans every M with ``M*M < N``, which is what a complete
    decision procedure needs.
    """
    rows = []
    stop = math.isqrt(N)
    if full_range and stop * stop < N:
        stop += 1
    for M in range(1, stop):
        row = tile_from_nm(N, M)
        if row is not None:
            rows.append(row)
    return rows


def reproduce_table(max_n: int, full_range: bool = False) -> List[CandidateRow]:
    rows: List[CandidateRow] = []
    for N in range(3, max_n + 1):
        rows.extend(enumerate_candidates(N, full_range))
    return rows


def format_table(rows: Sequence[CandidateRow]) -> str:
    return "".join(row.format() + "\n" for row in rows)


def check_lemma_ab(row: CandidateRow) -> bool:
    N, M = row.N, row.M
    return row.a * row.b * (3 * N - M * M) ** 2 == 4 * M * M * N * row.c * row.c


def zeta_of_row(row: CandidateRow) -> Zeta3:
    """e^{i alpha} for the tile of ``row`` as an element of Q(i sqrt 3)."""
    a, b, c = row.a, row.b, row.c
    cos_a = Fraction(b * b + c * c - a * a, 2 * b * c)
    # sin(alpha) = (a/c) * sqrt(3)/2
    return Zeta3(cos_a, Fraction(a, 2 * c))


def zeta_quadratic_coefficients(N: int, M: int) -> Tuple[Zeta3, Zeta3, Zeta3]:
    i3 = Zeta3(0, 1)
    m2 = M * M
    qa = m2 * (-i3 - 1) + N * (3 * i3 + 3)
    qb = m2 * (-i3 + 1) + N * (-3 * i3 + 3)
    qc = Zeta3(2 * m2 - 6 * N)
    return qa, qb, qc


def verify_zeta_quadratic(row: CandidateRow, M: Optional[int] = None) -> Zeta3:
    """Residual of the quadratic for zeta; zero for a consistent row.

    ``M`` overrides the row's coloring number (to probe wrong values).
    """
    qa, qb, qc = zeta_quadratic_coefficients(row.N, row.M if M is None else M)
    z = zeta_of_row(row)
    return qa * z * z + qb * z + qc


def prime_screen(N: int, case: GammaCase = GammaCase.PI_OVER_3) -> Verdict:
    # the same verdict holds for both gamma cases
    if N <= 3:
        return Verdict.TOO_SMALL
    if is_prime(N):
        return Verdict.EXCLUDED_PRIME
    return Verdict.NOT_EXCLUDED


def squarefree_compatible(N: int, K: int) -> bool:
    return squarefree_part(N) == squarefree_part(K)


@dataclass
class FeasibilityReport:
    passed: bool
    failures: List[str]
    side: Optional[int] = None

    def __bool__(self):
        return self.passed


def feasible_two_pi_three(N: int, a: int, b: int, c: int) -> FeasibilityReport:
    """Necessary conditions for an N-tiling by the integer tile (a, b, c) with gamma = 2pi/3."""
    failures = []
    if c * c != a * a + b * b + a * b:
        failures.append("LawOfCosines")
    if prime_screen(N, GammaCase.TWO_PI_OVER_3) is Verdict.EXCLUDED_PRIME:
        failures.append("ExcludedPrime")
    ok, side = is_perfect_square(N * a * b)
    if not ok:
        failures.append("AreaNotSquare")
    return FeasibilityReport(not failures, failures, side if ok else None)
