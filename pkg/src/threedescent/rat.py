"""Arbitrary-precision rationals and their wire format.

QQ is gmpy2.mpq: always stored normalized (gcd(|num|, den) = 1, den > 0),
which is exactly the Rat invariant.  Serialized as "p/q", or "p" when the
denominator is 1.
"""

from __future__ import annotations

import gmpy2
from gmpy2 import mpq, mpz

QQ = mpq
ZZ = mpz

Q0 = mpq(0)
Q1 = mpq(1)


def is_rat(x) -> bool:
    return isinstance(x, (type(Q0), int, type(ZZ(0))))


def rat(x) -> "mpq":
    """Coerce ints/strings/mpq to mpq."""
    if isinstance(x, str):
        return mpq(x)
    return mpq(x)


def rat_str(x) -> str:
    return str(mpq(x))


def parse_rat(s: str) -> "mpq":
    return mpq(s.strip())


def numer(x) -> int:
    return int(mpq(x).numerator)


def denom(x) -> int:
    return int(mpq(x).denominator)


def is_integer(x) -> bool:
    return mpq(x).denominator == 1


def floor_div(a, b) -> int:
    """floor(a/b) for rationals."""
    q = mpq(a) / mpq(b)
    n, d = q.numerator, q.denominator
    return int(n // d)


def round_nearest(x) -> int:
    """Round to nearest integer, ties toward +infinity."""
    q = mpq(x)
    return int((2 * q.numerator + q.denominator) // (2 * q.denominator))


def gcd(a: int, b: int) -> int:
    return int(gmpy2.gcd(mpz(a), mpz(b)))


def lcm(a: int, b: int) -> int:
    return int(gmpy2.lcm(mpz(a), mpz(b)))


def lcm_list(xs) -> int:
    out = mpz(1)
    for x in xs:
        out = gmpy2.lcm(out, mpz(x))
    return int(out)


def isqrt(n: int) -> int:
    return int(gmpy2.isqrt(mpz(n)))


def is_square(n) -> bool:
    q = mpq(n)
    if q < 0:
        return False
    return gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator)


def is_nth_power(q, n: int):
    """Return r with r**n == q, or None.  q rational, n >= 1."""
    q = mpq(q)
    if q == 0:
        return mpq(0)
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign = -1
        q = -q
    rn, okn = gmpy2.iroot(q.numerator, n)
    rd, okd = gmpy2.iroot(q.denominator, n)
    if not (okn and okd):
        return None
    return sign * mpq(rn, rd)
