"""Dense univariate polynomials over Q (coefficients ascending by degree).

The zero polynomial has coeffs == [] and degree -1.  All arithmetic is
exact; leading coefficients are kept nonzero by construction.
"""

from __future__ import annotations

from typing import Iterable, List, Tuple

from .errors import DivisionByZeroPoly
from .rat import QQ, Q0, Q1, lcm_list, rat


def _trim(cs: List) -> List:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class QPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim([QQ(x) for x in coeffs])

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def x(n: int = 1):
        """The monomial X^n."""
        return QPoly([0] * n + [1])

    @staticmethod
    def const(a):
        return QPoly([a])

    @staticmethod
    def from_roots(roots):
        p = QPoly([1])
        for r in roots:
            p = p * QPoly([-QQ(r), 1])
        return p

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def lc(self):
        if not self.c:
            return Q0
        return self.c[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.c):
            return self.c[i]
        return Q0

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self) -> str:
        if not self.c:
            return "QPoly(0)"
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            elif i == 1:
                terms.append(f"{a}*X")
            else:
                terms.append(f"{a}*X^{i}")
        return "QPoly(" + " + ".join(terms) + ")"

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        a, b = self.c, other.c
        n = max(len(a), len(b))
        return QPoly([ (a[i] if i < len(a) else Q0) + (b[i] if i < len(b) else Q0)
                       for i in range(n) ])

    def __sub__(self, other):
        a, b = self.c, other.c
        n = max(len(a), len(b))
        return QPoly([ (a[i] if i < len(a) else Q0) - (b[i] if i < len(b) else Q0)
                       for i in range(n) ])

    def __neg__(self):
        return QPoly([-a for a in self.c])

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return self.scale(other)
        a, b = self.c, other.c
        if not a or not b:
            return QPoly()
        out = [Q0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return QPoly(out)

    __rmul__ = __mul__

    def scale(self, s):
        s = QQ(s)
        return QPoly([a * s for a in self.c])

    def shift(self, n: int):
        """Multiply by X^n."""
        if not self.c:
            return QPoly()
        return QPoly([Q0] * n + self.c)

    def __pow__(self, n: int):
        out = QPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other) -> Tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise DivisionByZeroPoly("polynomial division by zero")
        q = [Q0] * max(0, self.degree - other.degree + 1)
        r = list(self.c)
        dlc = other.lc()
        dd = other.degree
        while len(r) - 1 >= dd and r:
            k = len(r) - 1 - dd
            t = r[-1] / dlc
            q[k] = t
            for i, b in enumerate(other.c):
                r[k + i] -= t * b
            _trim(r)
        return QPoly(q), QPoly(r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "QPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisionByZeroPoly("division is not exact")
        return q

    # -- calculus / evaluation --------------------------------------------------

    def deriv(self):
        return QPoly([i * a for i, a in enumerate(self.c)][1:])

    def eval(self, x):
        """Horner evaluation; x may be any ring element supporting * and +."""
        if not self.c:
            return x * 0
        acc = None
        for a in reversed(self.c):
            acc = a if acc is None else acc * x + a
        return acc

    def compose(self, other: "QPoly") -> "QPoly":
        acc = QPoly()
        for a in reversed(self.c):
            acc = acc * other + QPoly([a])
        return acc

    def reverse_sign(self) -> "QPoly":
        """p(-X)."""
        return QPoly([(-a if i % 2 else a) for i, a in enumerate(self.c)])

    # -- gcd / resultant / squarefree --------------------------------------------

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc())

    def gcd(self, other) -> "QPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def xgcd(self, other):
        """Extended gcd: (g, s, t) with s*self + t*other = g, g monic or zero."""
        a, b = self, other
        sa, sb = QPoly([1]), QPoly()
        ta, tb = QPoly(), QPoly([1])
        while not b.is_zero():
            q, r = a.divmod(b)
            a, b = b, r
            sa, sb = sb, sa - q * sb
            ta, tb = tb, ta - q * tb
        if a.is_zero():
            return a, sa, ta
        l = a.lc()
        return a.monic(), sa.scale(1 / l), ta.scale(1 / l)

    def resultant(self, other):
        """Res(self, other) over Q via the Euclidean recursion."""
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return Q0
        res = Q1
        while b.degree > 0:
            r = a % b
            if r.is_zero():
                return Q0
            res *= b.lc() ** (a.degree - r.degree)
            if (a.degree * b.degree) % 2 == 1:
                res = -res
            a, b = b, r
        return res * b.lc() ** a.degree

    def disc(self):
        """Discriminant: (-1)^(d(d-1)/2) Res(p, p') / lc(p)."""
        d = self.degree
        if d < 1:
            return Q0
        r = self.resultant(self.deriv())
        s = -1 if (d * (d - 1) // 2) % 2 else 1
        return s * r / self.lc()

    def squarefree_part(self) -> "QPoly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.deriv())
        return (self // g).monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.deriv()).degree <= 0

    # -- integrality -------------------------------------------------------------

    def denominator(self) -> int:
        return lcm_list([a.denominator for a in self.c] or [1])

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.c)

    def content(self):
        """Content of an integral polynomial (gcd of coefficients, positive)."""
        from .rat import gcd as igcd
        g = 0
        for a in self.c:
            g = igcd(g, int(a.numerator))
        return g

    def primitive(self) -> "QPoly":
        """Integer multiple with coprime integer coefficients, positive lc."""
        if self.is_zero():
            return self
        d = self.denominator()
        p = self.scale(d)
        c = p.content()
        p = p.scale(QQ(1, c))
        if p.lc() < 0:
            p = -p
        return p


def poly_from_str_list(xs) -> QPoly:
    return QPoly([rat(x) for x in xs])


def poly_to_str_list(p: QPoly):
    return [str(a) for a in p.c]
