"""Exact arithmetic in Q(sqrt 3) and Q(i sqrt 3), plus the integer helpers
used by the screening formulas.

Elements are stored as three integers ``(p, q, d)`` meaning ``(p + q*w)/d``
with ``w*w = D`` (``D = 3`` for :class:`Q3`, ``D = -3`` for :class:`Zeta3`),
``d > 0`` and ``gcd(p, q, d) == 1``. The representation is therefore unique and
equality/hashing are structural.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union

Rat = Fraction
RationalLike = Union[int, Fraction]

__all__ = [
    "Rat",
    "Q3",
    "Zeta3",
    "q3_sqrt",
    "q3_sqrt_rational",
    "rational_sqrt",
    "is_perfect_square",
    "squarefree_part",
    "is_prime",
    "parse_rat",
    "parse_q3",
    "format_q3",
    "q3_sign",
    "q3_arith",
]


def _reduce(p: int, q: int, d: int) -> Tuple[int, int, int]:
    if d < 0:
        p, q, d = -p, -q, -d
    g = math.gcd(p, q, d)
    if g != 1:
        p //= g
        q //= g
        d //= g
    return p, q, d


class _Quadratic:
    __slots__ = ("_p", "_q", "_d", "_hash")
    D = 0

    def __init__(self, r: RationalLike = 0, s: RationalLike = 0):
        r = Fraction(r)
        s = Fraction(s)
        d = r.denominator * s.denominator // math.gcd(r.denominator, s.denominator)
        p = r.numerator * (d // r.denominator)
        q = s.numerator * (d // s.denominator)
        self._p, self._q, self._d = _reduce(p, q, d)
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, d: int):
        obj = object.__new__(cls)
        obj._p, obj._q, obj._d = _reduce(p, q, d)
        obj._hash = None
        return obj

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, cls):
            return other
        if isinstance(other, int):
            return cls._raw(other, 0, 1)
        if isinstance(other, Fraction):
            return cls._raw(other.numerator, 0, other.denominator)
        return None

    # rational / irrational parts
    @property
    def r(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def s(self) -> Fraction:
        return Fraction(self._q, self._d)

    def is_rational(self) -> bool:
        return self._q == 0

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p and self._q == o._q and self._d == o._d

    def __hash__(self):
        h = self._hash
        if h is None:
            if self._q == 0:
                h = hash(Fraction(self._p, self._d))
            else:
                h = hash((type(self).__name__, self._p, self._q, self._d))
            self._hash = h
        return h

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return self._raw(self._p + o._p, self._q + o._q, self._d)
        return self._raw(self._p * o._d + o._p * self._d,
                         self._q * o._d + o._q * self._d,
                         self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(-self._p, -self._q, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return self._raw(self._p - o._p, self._q - o._q, self._d)
        return self._raw(self._p * o._d - o._p * self._d,
                         self._q * o._d - o._q * self._d,
                         self._d * o._d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        return self._raw(p1 * p2 + self.D * q1 * q2, p1 * q2 + p2 * q1, self._d * o._d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``r^2 - D s^2``."""
        return Fraction(self._p * self._p - self.D * self._q * self._q, self._d * self._d)

    def conjugate(self):
        return self._raw(self._p, -self._q, self._d)

    def inverse(self):
        n = self._p * self._p - self.D * self._q * self._q
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        # (p + q w)/d inverse = d (p - q w) / (p^2 - D q^2)
        return self._raw(self._d * self._p, -self._d * self._q, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self._raw(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"{type(self).__name__}({self.r!s}, {self.s!s})"


class Q3(_Quadratic):
    """Real number ``r + s*sqrt(3)`` with rational ``r``, ``s``.

    Totally ordered; comparisons are exact.
    """

    __slots__ = ()
    D = 3

    def sign(self) -> int:
        return _sign3(self._p, self._q)

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return (self._p + self._q * math.sqrt(3.0)) / self._d

    def __str__(self):
        return format_q3(self)


def _sign3(p: int, q: int) -> int:
    # sign of p + q*sqrt(3); d > 0 does not matter
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if (p > 0) == (q > 0):
        return 1 if p > 0 else -1
    lhs = p * p
    rhs = 3 * q * q
    if p > 0:
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


def q3_sign(x: Q3) -> int:
    return x.sign()


class Zeta3(_Quadratic):
    """Element ``re + im3*i*sqrt(3)`` of Q(i sqrt 3)."""

    __slots__ = ()
    D = -3

    @property
    def re(self) -> Fraction:
        return self.r

    @property
    def im3(self) -> Fraction:
        return self.s

    def __complex__(self):
        return complex(self._p / self._d, self._q * math.sqrt(3.0) / self._d)

    def __str__(self):
        return f"{self.r}{'+' if self.s >= 0 else '-'}{abs(self.s)}i√3"


W = Q3(0, 1)
I3 = Zeta3(0, 1)


# --- integer number theory -------------------------------------------------

def is_perfect_square(n: int) -> Tuple[bool, Optional[int]]:
    """Return ``(True, k)`` when ``n == k*k`` for an integer ``k >= 0``."""
    if n < 0:
        return False, None
    k = math.isqrt(n)
    if k * k == n:
        return True, k
    return False, None


def squarefree_part(n: int) -> int:
    """Product of the primes dividing ``n`` to an odd power."""
    if n < 1:
        raise ValueError("squarefree_part needs n >= 1")
    part = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e & 1:
                part *= p
        p += 1 if p == 2 else 2
    return part * n


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --- square roots ------------------------------------------------------------

def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Nonnegative rational square root of ``x`` or None."""
    x = Fraction(x)
    if x < 0:
        return None
    ok_n, rn = is_perfect_square(x.numerator)
    if not ok_n:
        return None
    ok_d, rd = is_perfect_square(x.denominator)
    if not ok_d:
        return None
    return Fraction(rn, rd)


def q3_sqrt_rational(x: RationalLike) -> Optional[Q3]:
    """Nonnegative ``y`` in Q(sqrt 3) with ``y*y == x``, or None.

    Such a root exists only when ``x = t^2`` or ``x = 3 t^2``.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("q3_sqrt_rational of a negative number")
    t = rational_sqrt(x)
    if t is not None:
        return Q3(t)
    t = rational_sqrt(x / 3)
    if t is not None:
        return Q3(0, t)
    return None


@lru_cache(maxsize=1 << 16)
def q3_sqrt(x: Q3) -> Optional[Q3]:
    """Nonnegative square root of ``x`` inside Q(sqrt 3), or None."""
    if x.sign() < 0:
        raise ValueError("q3_sqrt of a negative number")
    r, s = x.r, x.s
    if s == 0:
        return q3_sqrt_rational(r)
    # (u + v w)^2 = u^2 + 3 v^2 + 2uv w
    k = rational_sqrt(r * r - 3 * s * s)
    if k is None:
        return None
    for u2 in ((r + k) / 2, (r - k) / 2):
        u = rational_sqrt(u2)
        if not u:
            continue
        v = s / (2 * u)
        y = Q3(u, v)
        if y.sign() < 0:
            y = -y
        if y * y == x:
            return y
    return None


# --- literal grammar ---------------------------------------------------------

_RAT = r"-?\d+(?:/\d+)?"
_Q3_RE = re.compile(
    rf"^(?:(?P<r>{_RAT})(?P<op>[+-])(?P<s>{_RAT})w|(?P<only_s>{_RAT})w|(?P<only_r>{_RAT}))$"
)


def parse_rat(text: str) -> Fraction:
    if not re.fullmatch(_RAT, text):
        raise ValueError(f"malformed rational literal {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_q3(text: str) -> Q3:
    """Parse ``RAT``, ``RATw`` or ``RAT(+|-)RATw`` where ``w`` is sqrt(3)."""
    m = _Q3_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed Q3 literal {text!r}")
    if m.group("only_r") is not None:
        return Q3(parse_rat(m.group("only_r")))
    if m.group("only_s") is not None:
        return Q3(0, parse_rat(m.group("only_s")))
    s = parse_rat(m.group("s"))
    if m.group("op") == "-":
        s = -s
    return Q3(parse_rat(m.group("r")), s)


def format_q3(x: Q3) -> str:
    r, s = x.r, x.s
    if s == 0:
        return str(r)
    sign = "+" if s > 0 else "-"
    return f"{r}{sign}{abs(s)}w"


def q3_arith(x: Q3, y: Q3, op: str) -> Q3:
    """Dispatch helper for the four field operations (``add sub mul div``)."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")
