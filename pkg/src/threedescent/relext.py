"""Relative extension M = L(v) with g(v) = 0, g monic over L.

Elements are vectors of NFElem coefficients in the v-power basis.  The
Q-vector-space structure (dimension [L:Q]*deg g, basis u^a v^b) carries
all absolute linear algebra: traces, minimal polynomials, involutions and
automorphisms, and the primary complex embedding used for reconstruction.
"""

from __future__ import annotations

import threading
from typing import List, Optional, Sequence

from mpmath import mpc, workprec

from .errors import DivisionByZeroElem, PreconditionError
from .numfield import (NFElem, NumberField, eval_qpoly_mpc,
                       minimal_poly_from_mul, _poly_complex_roots)
from .qpoly import QPoly
from .rat import QQ, Q0


def _ltrim(cs: List[NFElem]) -> List[NFElem]:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def lpoly_divmod(num: List[NFElem], den: List[NFElem], L: NumberField):
    """Division with remainder for polynomials with NFElem coefficients."""
    num = _ltrim(list(num))
    den = _ltrim(list(den))
    if not den:
        raise DivisionByZeroElem("polynomial division by zero over L")
    q = [L.zero() for _ in range(max(0, len(num) - len(den) + 1))]
    inv_lc = den[-1].inverse()
    while len(num) >= len(den):
        k = len(num) - len(den)
        t = num[-1] * inv_lc
        q[k] = t
        for i, d in enumerate(den):
            num[k + i] = num[k + i] - t * d
        _ltrim(num)
    return q, num


class RelExt:
    """M = L[v]/(g); g monic with NFElem coefficients, ascending degree."""

    def __init__(self, base: NumberField, g_coeffs: Sequence[NFElem]):
        self.base = base
        g = list(g_coeffs)
        if not g or not (g[-1] == base.one()):
            raise PreconditionError("g must be monic over L")
        self.g = g
        self.reldeg = len(g) - 1
        self.qdim = base.degree * self.reldeg
        self._lock = threading.Lock()
        self._emb_cache = {}
        self._rel_traces: Optional[List[NFElem]] = None

    def __repr__(self):
        return f"RelExt(deg {self.reldeg} over {self.base!r})"

    # -- element constructors -----------------------------------------------------

    def elem(self, coeffs: Sequence[NFElem]) -> "MElem":
        cs = list(coeffs)
        if len(cs) > self.reldeg:
            cs = self._reduce(cs)
        cs += [self.base.zero()] * (self.reldeg - len(cs))
        return MElem(self, cs)

    def zero(self) -> "MElem":
        return self.elem([])

    def one(self) -> "MElem":
        return self.elem([self.base.one()])

    def gen(self) -> "MElem":
        return self.elem([self.base.zero(), self.base.one()])

    def from_base(self, x: NFElem) -> "MElem":
        return self.elem([x])

    def from_rational(self, q) -> "MElem":
        return self.elem([self.base.from_rational(q)])

    def elem_from_qcoords(self, coords) -> "MElem":
        n = self.base.degree
        cs = []
        for b in range(self.reldeg):
            cs.append(self.base.elem(list(coords[b * n:(b + 1) * n])))
        return MElem(self, cs)

    def qbasis_elements(self) -> List["MElem"]:
        out = []
        for b in range(self.reldeg):
            for a in range(self.base.degree):
                cs = [self.base.zero() for _ in range(self.reldeg)]
                cs[b] = self.base.elem(QPoly.x(a) if a else QPoly([1]))
                out.append(MElem(self, cs))
        return out

    # -- reduction / multiplication --------------------------------------------------

    def _reduce(self, cs: List[NFElem]) -> List[NFElem]:
        cs = list(cs)
        while len(cs) > self.reldeg:
            t = cs.pop()
            if t.is_zero():
                continue
            k = len(cs) - self.reldeg
            for i in range(self.reldeg):
                cs[k + i] = cs[k + i] - t * self.g[i]
        cs += [self.base.zero()] * (self.reldeg - len(cs))
        return cs

    # -- traces ------------------------------------------------------------------------

    def rel_power_traces(self) -> List[NFElem]:
        """Tr_{M/L}(v^k), k = 0..reldeg-1, by Newton's identities over L."""
        if self._rel_traces is None:
            d = self.reldeg
            a = self.g
            p: List[NFElem] = [self.base.from_rational(d)] + [self.base.zero()] * (d - 1)
            for k in range(1, d):
                s = a[d - k] * QQ(k)
                for i in range(1, k):
                    s = s + a[d - i] * p[k - i]
                p[k] = -s
            self._rel_traces = p
        return self._rel_traces

    # -- primary embedding ---------------------------------------------------------------

    def embedding_data(self, prec_bits: int):
        """(u_value, v_value) of the primary embedding at prec_bits."""
        with self._lock:
            if prec_bits in self._emb_cache:
                return self._emb_cache[prec_bits]
        root_u = self.base.complex_roots(prec_bits)[0][0]
        with workprec(2 * prec_bits + 64):
            coeffs = [eval_qpoly_mpc(c.poly, root_u) for c in reversed(self.g)]
            roots = _poly_complex_roots(coeffs, 2 * prec_bits)
            roots.sort(key=lambda r: (r.real, r.imag))
        data = (root_u, roots[0])
        with self._lock:
            self._emb_cache[prec_bits] = data
        return data

    def embed_many(self, elems: Sequence["MElem"], prec_bits: int) -> List[mpc]:
        ru, rv = self.embedding_data(prec_bits)
        with workprec(2 * prec_bits + 64):
            out = []
            for z in elems:
                acc = mpc(0)
                for c in reversed(z.c):
                    acc = acc * rv + eval_qpoly_mpc(c.poly, ru)
                out.append(acc)
        return out


class MElem:
    __slots__ = ("parent", "c")

    def __init__(self, parent: RelExt, coeffs: List[NFElem]):
        self.parent = parent
        self.c = coeffs  # exactly reldeg NFElems

    def qcoords(self) -> List:
        out = []
        for cf in self.c:
            out.extend(cf.coords())
        return out

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def in_base(self) -> bool:
        return all(x.is_zero() for x in self.c[1:])

    def base_part(self) -> NFElem:
        if not self.in_base():
            raise ValueError("element not in the base field")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, MElem):
            return all(a == b for a, b in zip(self.c, other.c))
        if isinstance(other, NFElem):
            return self.in_base() and self.c[0] == other
        return self.in_base() and self.c[0] == other

    def __hash__(self):
        return hash(tuple(tuple(x.poly.c) for x in self.c))

    def __repr__(self):
        return f"MElem({[str(x.poly) for x in self.c]})"

    def _coerce(self, other) -> "MElem":
        if isinstance(other, MElem):
            return other
        if isinstance(other, NFElem):
            return self.parent.from_base(other)
        return self.parent.from_rational(QQ(other))

    def __add__(self, other):
        o = self._coerce(other)
        return MElem(self.parent, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return MElem(self.parent, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MElem(self.parent, [-a for a in self.c])

    def __mul__(self, other):
        if not isinstance(other, MElem):
            if isinstance(other, NFElem):
                return MElem(self.parent, [a * other for a in self.c])
            return MElem(self.parent, [a * QQ(other) for a in self.c])
        d = self.parent.reldeg
        L = self.parent.base
        out = [L.zero() for _ in range(2 * d - 1)]
        for i, ai in enumerate(self.c):
            if ai.is_zero():
                continue
            for j, bj in enumerate(other.c):
                if bj.is_zero():
                    continue
                out[i + j] = out[i + j] + ai * bj
        return MElem(self.parent, self.parent._reduce(out))

    __rmul__ = __mul__

    def inverse(self) -> "MElem":
        if self.is_zero():
            raise DivisionByZeroElem("inverse of zero in M")
        # extended euclid over L[X]: track s with s*self ≡ r (mod g)
        L = self.parent.base

        def submul(sa, q, sb):
            out = [L.zero()] * max(len(sa), (len(q) + len(sb) - 1) if q and sb else 0)
            for i, x in enumerate(sa):
                out[i] = out[i] + x
            for i, qi in enumerate(q):
                if qi.is_zero():
                    continue
                for j, sj in enumerate(sb):
                    out[i + j] = out[i + j] - qi * sj
            return _ltrim(out)

        r0, r1 = _ltrim(list(self.parent.g)), _ltrim(list(self.c))
        s0, s1 = [], [L.one()]
        while r1:
            q, r = lpoly_divmod(r0, r1, L)
            r0, r1 = r1, _ltrim(r)
            s0, s1 = s1, submul(s0, q, s1)
        if len(r0) != 1:
            raise DivisionByZeroElem("element not invertible: g reducible over L?")
        inv_g = r0[0].inverse()
        res = self.parent._reduce([x * inv_g for x in s0])
        out = MElem(self.parent, res)
        assert (out * self) == self.parent.one(), "inverse verification failed"
        return out

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.parent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- traces / minpoly --------------------------------------------------------------

    def rel_trace(self) -> NFElem:
        tr = self.parent.rel_power_traces()
        s = self.parent.base.zero()
        for k in range(self.parent.reldeg):
            s = s + self.c[k] * tr[k]
        return s

    def abs_trace(self):
        return self.rel_trace().trace_to_Q()

    def minimal_poly_abs(self) -> QPoly:
        one = self.parent.one().qcoords()

        def mul(v):
            z = self.parent.elem_from_qcoords(v) * self
            return z.qcoords()

        return minimal_poly_from_mul(one, mul)

    def apply_base_map(self, fn) -> "MElem":
        """Apply an L -> L map (for instance sigma) to every coefficient."""
        return MElem(self.parent, [fn(x) for x in self.c])


class RelInvolution:
    """Involution of M fixing L pointwise, given by the image of v."""

    def __init__(self, field: RelExt, generator_image: MElem):
        self.field = field
        self.generator_image = generator_image
        self._pows = [field.one()]
        for _ in range(field.reldeg - 1):
            self._pows.append(self._pows[-1] * generator_image)
        self.matrix = self._build_matrix()
        img2 = self.apply(generator_image)
        if not img2 == field.gen():
            raise PreconditionError("not an involution of M")

    def _build_matrix(self):
        cols = []
        for b in range(self.field.reldeg):
            for a in range(self.field.base.degree):
                ua = self.field.base.elem(QPoly.x(a) if a else QPoly([1]))
                img = self._pows[b] * ua
                cols.append(img.qcoords())
        return [list(col) for col in zip(*cols)]

    def apply(self, z: MElem) -> MElem:
        out = self.field.zero()
        for b in range(self.field.reldeg):
            if not z.c[b].is_zero():
                out = out + self._pows[b] * z.c[b]
        return out

    def is_identity(self) -> bool:
        return self.generator_image == self.field.gen()


class MAutomorphism:
    """Q-algebra automorphism of M from images of u and v."""

    def __init__(self, field: RelExt, u_image: MElem, v_image: MElem):
        self.field = field
        self.u_image = u_image
        self.v_image = v_image
        n, d = field.base.degree, field.reldeg
        upows = [field.one()]
        for _ in range(n - 1):
            upows.append(upows[-1] * u_image)
        vpows = [field.one()]
        for _ in range(d - 1):
            vpows.append(vpows[-1] * v_image)
        cols = []
        for b in range(d):
            for a in range(n):
                cols.append((vpows[b] * upows[a]).qcoords())
        self.matrix = [list(col) for col in zip(*cols)]

    def apply(self, z: MElem) -> MElem:
        v = z.qcoords()
        n = self.field.qdim
        out = [Q0] * n
        for j, vj in enumerate(v):
            if vj != 0:
                col = [self.matrix[i][j] for i in range(n)]
                for i in range(n):
                    out[i] += vj * col[i]
        return self.field.elem_from_qcoords(out)
