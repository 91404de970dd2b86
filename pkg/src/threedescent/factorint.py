"""Integer factorization: trial division, Miller-Rabin, Brent's rho.

Scope is deliberately small: discriminants and norms met during descent,
not general-purpose factoring.  A configurable budget turns stalls into
FactorizationTooHard instead of unbounded loops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Tuple

import gmpy2

from .errors import FactorizationTooHard

TRIAL_BOUND = 10 ** 6
RHO_BUDGET = 2 ** 22  # total iterations across all Brent rounds

# Deterministic Miller-Rabin witnesses for n < 3.3e24 (covers 64-bit).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class IntFactorization:
    sign: int
    factors: Tuple[Tuple[int, int], ...]  # (prime, exponent), primes increasing

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p ** e
        return out

    def __str__(self) -> str:
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body

    def as_dict(self):
        return {"sign": self.sign, "factors": [[p, e] for p, e in self.factors]}


def is_prime(n: int, rounds: int = 40) -> bool:
    """Deterministic below 2^64 (fixed witness set), Miller-Rabin above."""
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < 1 << 64:
        return not any(witness(a) for a in _MR_WITNESSES if a < n)
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        if witness(a):
            return False
    return True


def _brent_rho(n: int, rng: random.Random, budget: int) -> Tuple[int, int]:
    """Return (factor, iterations used); factor == n means failure."""
    if n % 2 == 0:
        return 2, 0
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += min(m, r - k)
                g = gmpy2.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
                used += 1
                if used >= budget:
                    break
        if 1 < g < n:
            return int(g), used
    return n, used


def factor_integer(n: int, rho_budget: int = RHO_BUDGET) -> IntFactorization:
    """Factor n != 0 into certified primes.

    Raises FactorizationTooHard once the rho budget is exhausted without
    splitting a remaining composite.
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    fac = {}

    def add(p: int, e: int = 1):
        fac[p] = fac.get(p, 0) + e

    for p in (2, 3, 5):
        while n % p == 0:
            add(p)
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    wi = 0
    while p * p <= n and p < TRIAL_BOUND:
        while n % p == 0:
            add(p)
            n //= p
        p += wheel[wi]
        wi = (wi + 1) % 8
    stack = [n] if n > 1 else []
    rng = random.Random(0xD15EA5E)
    budget = rho_budget
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            add(m)
            continue
        root, exact = gmpy2.iroot(m, 2)
        if exact:
            stack += [int(root), int(root)]
            continue
        d, used = _brent_rho(m, rng, budget)
        budget -= used
        if d == m or d == 1:
            raise FactorizationTooHard(f"no factor of {m} found within budget")
        stack += [d, m // d]
    factors = tuple(sorted(fac.items()))
    for q, _ in factors:
        assert is_prime(q)
    return IntFactorization(sign, factors)


def factorization_from_pairs(sign: int, pairs) -> IntFactorization:
    return IntFactorization(sign, tuple(sorted((int(p), int(e)) for p, e in pairs)))


def partial_factor_small(n: int, bound: int = TRIAL_BOUND):
    """Trial-division part of |n| up to `bound`: ([(p, e), ...], cofactor)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out = []
    for p in (2, 3, 5):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    wi = 0
    while p * p <= n and p < bound:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += wheel[wi]
        wi = (wi + 1) % 8
    if 1 < n < bound * bound:
        out.append((n, 1))
        n = 1
    return out, n
