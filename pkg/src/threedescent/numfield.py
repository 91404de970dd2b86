"""Number fields Q[x]/(f), their elements, embeddings and reconstruction.

A NumberField is defined by a monic irreducible QPoly.  Elements live in
the power basis of the generator.  Complex embeddings are computed with
mpmath at a requested precision, with first-order certified radii; all
answers derived from them are verified exactly before being returned.
"""

from __future__ import annotations

import threading
from typing import List, Optional, Sequence, Tuple

from mpmath import mpc, mpf, workprec

from . import recon
from .errors import (AmbiguousRoot, DivisionByZeroElem, NoRootInField,
                     PrecisionExhausted, PreconditionError)
from .qmat import mat, rank, right_kernel, solve
from .qpoly import QPoly
from .rat import QQ, Q0, Q1

PRECISION_LADDER = (256, 512, 1024, 2048, 4096, 8192)


def q_to_mpf(q) -> mpf:
    q = QQ(q)
    return mpf(int(q.numerator)) / mpf(int(q.denominator))


def eval_qpoly_mpc(p: QPoly, z):
    acc = mpc(0)
    for a in reversed(p.c):
        acc = acc * z + q_to_mpf(a)
    return acc


def _poly_complex_roots(coeffs_desc, prec_bits: int):
    """Roots of a polynomial given by complex mpmath coefficients."""
    from mpmath import polyroots
    with workprec(prec_bits + 64):
        roots = polyroots(coeffs_desc, maxsteps=200, extraprec=prec_bits // 2 + 60)
        return [mpc(r) for r in roots]


class NumberField:
    """Q[x]/(f) for monic irreducible f."""

    def __init__(self, poly: QPoly, check_irreducible: bool = True):
        if not poly.is_monic():
            raise PreconditionError("defining polynomial must be monic")
        if not poly.is_squarefree():
            raise PreconditionError("defining polynomial must be squarefree")
        if check_irreducible and not poly_is_irreducible(poly):
            raise PreconditionError("defining polynomial must be irreducible over Q")
        self.poly = poly
        self.degree = poly.degree
        self._lock = threading.Lock()
        self._roots_cache = {}
        self._power_traces: Optional[List] = None

    def __repr__(self):
        return f"NumberField({self.poly!r})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(("NumberField", tuple(self.poly.c)))

    # -- elements ---------------------------------------------------------------

    def elem(self, coeffs) -> "NFElem":
        if isinstance(coeffs, QPoly):
            p = coeffs
        else:
            p = QPoly(coeffs)
        if p.degree >= self.degree:
            p = p % self.poly
        return NFElem(self, p)

    def zero(self) -> "NFElem":
        return NFElem(self, QPoly())

    def one(self) -> "NFElem":
        return NFElem(self, QPoly([1]))

    def gen(self) -> "NFElem":
        return NFElem(self, QPoly.x(1))

    def from_rational(self, q) -> "NFElem":
        return NFElem(self, QPoly([QQ(q)]))

    # -- numerics ---------------------------------------------------------------

    def complex_roots(self, prec_bits: int = 256) -> List[Tuple[mpc, mpf]]:
        """All roots with certified radii, deterministically ordered.

        Radii use the first-order Newton bound n|f(z)|/|f'(z)|; precision is
        escalated internally until every radius is below 2^(-prec_bits/2).
        """
        if prec_bits < 64:
            raise PreconditionError("precision_bits must be >= 64")
        with self._lock:
            if prec_bits in self._roots_cache:
                return self._roots_cache[prec_bits]
        fp = self.poly
        dfp = fp.deriv()
        target = mpf(2) ** (-(prec_bits // 2))
        for work in (prec_bits + 64, 2 * prec_bits + 64, 4 * prec_bits + 64):
            with workprec(work):
                coeffs = [q_to_mpf(a) for a in reversed(fp.c)]
                roots = _poly_complex_roots(coeffs, work)
                out = []
                ok = True
                for r in roots:
                    fr = eval_qpoly_mpc(fp, r)
                    dfr = eval_qpoly_mpc(dfp, r)
                    if dfr == 0:
                        ok = False
                        break
                    rad = self.degree * abs(fr) / abs(dfr)
                    if not rad < target:
                        ok = False
                        break
                    out.append((r, rad))
                if ok:
                    out.sort(key=lambda t: (t[0].real, t[0].imag))
                    with self._lock:
                        self._roots_cache[prec_bits] = out
                    return out
        raise PrecisionExhausted(
            f"could not certify roots of {fp!r} at {prec_bits} bits")

    def primary_embedding_values(self, prec_bits: int) -> List[mpc]:
        """Values of 1, u, ..., u^(n-1) under the first (sorted) embedding."""
        root = self.complex_roots(prec_bits)[0][0]
        vals = [mpc(1)]
        for _ in range(self.degree - 1):
            vals.append(vals[-1] * root)
        return vals

    # -- traces -------------------------------------------------------------------

    def power_traces(self) -> List:
        """Tr(u^k) for k = 0..degree-1 via Newton's identities."""
        if self._power_traces is None:
            n = self.degree
            a = self.poly.c  # ascending; a[n] == 1
            p = [Q0] * n
            p[0] = QQ(n)
            for k in range(1, n):
                s = QQ(k) * a[n - k]
                for i in range(1, k):
                    s += a[n - i] * p[k - i]
                p[k] = -s
            self._power_traces = p
        return self._power_traces


class NFElem:
    __slots__ = ("parent", "poly")

    def __init__(self, parent: NumberField, poly: QPoly):
        self.parent = parent
        self.poly = poly

    def coords(self) -> List:
        return [self.poly[i] for i in range(self.parent.degree)]

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.degree <= 0

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.poly[0]

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.parent == other.parent and self.poly == other.poly
        return self.poly == QPoly([QQ(other)])

    def __hash__(self):
        return hash((id(self.parent), tuple(self.poly.c)))

    def __repr__(self):
        return f"NFElem({self.poly!r})"

    def _coerce(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            if other.parent is not self.parent and other.parent != self.parent:
                raise ValueError("mixed number fields")
            return other
        return self.parent.from_rational(other)

    def __add__(self, other):
        o = self._coerce(other)
        return NFElem(self.parent, self.poly + o.poly)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NFElem(self.parent, self.poly - o.poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NFElem(self.parent, -self.poly)

    def __mul__(self, other):
        if isinstance(other, NFElem):
            return NFElem(self.parent, (self.poly * other.poly) % self.parent.poly)
        return NFElem(self.parent, self.poly.scale(QQ(other)))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise DivisionByZeroElem("inverse of zero")
        g, s, _ = self.poly.xgcd(self.parent.poly)
        if g.degree != 0:
            raise DivisionByZeroElem("element not invertible (field bug?)")
        return NFElem(self.parent, s.scale(1 / g[0]) % self.parent.poly)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

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

    # -- invariants ----------------------------------------------------------------

    def trace_to_Q(self):
        p = self.parent.power_traces()
        return sum((self.poly[k] * p[k] for k in range(self.parent.degree)), Q0)

    def norm_to_Q(self):
        if self.is_zero():
            return Q0
        return self.parent.poly.resultant(self.poly)

    def minimal_poly(self) -> QPoly:
        return minimal_poly_from_mul(self.coords(), lambda v: _mul_coords(self, v))

    def embed(self, root) -> mpc:
        return eval_qpoly_mpc(self.poly, root)


def _mul_coords(z: NFElem, v: List) -> List:
    w = z.parent.elem(QPoly(v)) * z
    return w.coords()


def minimal_poly_from_mul(one_coords, mul) -> QPoly:
    """Minimal polynomial of z given the action v -> coords(z * elem(v)).

    `one_coords` is the coordinate vector of 1.  Krylov iteration with
    exact linear algebra; terminates at the first linear dependence.
    """
    vecs = [list(one_coords)]
    while True:
        v = mul(vecs[-1])
        cols = [list(col) for col in zip(*mat(vecs))]
        sol = solve(cols, v)
        if sol is not None:
            d = len(vecs)
            coeffs = [-sol[i] for i in range(d)] + [Q1]
            return QPoly(coeffs)
        vecs.append(v)


def poly_is_irreducible(p: QPoly) -> bool:
    """Irreducibility over Q, delegated to sympy's exact factorizer."""
    import sympy
    if p.degree <= 0:
        return False
    if p.degree == 1:
        return True
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(a.numerator), int(a.denominator)) * x ** i
               for i, a in enumerate(p.c))
    fl = sympy.factor_list(sympy.Poly(expr, x))[1]
    nontrivial = [(f, e) for f, e in fl if f.degree() > 0]
    return len(nontrivial) == 1 and nontrivial[0][1] == 1 and \
        nontrivial[0][0].degree() == p.degree


def factor_poly_q(p: QPoly) -> List[Tuple[QPoly, int]]:
    """Monic irreducible factors of p over Q with multiplicities."""
    import sympy
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(a.numerator), int(a.denominator)) * x ** i
               for i, a in enumerate(p.c))
    out = []
    for f, e in sympy.factor_list(sympy.Poly(expr, x))[1]:
        coeffs = list(reversed(f.all_coeffs()))
        q = QPoly([QQ(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs]).monic()
        if q.degree > 0:
            out.append((q, int(e)))
    out.sort(key=lambda t: (t[0].degree, tuple(str(c) for c in t[0].c)))
    return out


class Involution:
    """Order-2 (or identity) automorphism of a field, stored as its matrix."""

    def __init__(self, field, generator_image):
        self.field = field
        self.generator_image = generator_image
        self.matrix = self._build_matrix()
        self._check()

    def _build_matrix(self):
        n = self.field.degree
        cols = []
        p = self.field.one()
        for _ in range(n):
            cols.append(p.coords())
            p = p * self.generator_image
        return [list(col) for col in zip(*cols)]  # columns = images of u^k

    def _check(self):
        img = self.apply(self.generator_image)
        if not img == self.field.gen():
            raise PreconditionError("not an involution: sigma^2 != id")

    def apply(self, z: NFElem) -> NFElem:
        v = z.coords()
        n = self.field.degree
        out = [sum((self.matrix[i][j] * v[j] for j in range(n) if v[j] != 0), Q0)
               for i in range(n)]
        return self.field.elem(out)

    def is_identity(self) -> bool:
        return self.generator_image == self.field.gen()


def complex_embeddings(fld: NumberField, precision_bits: int):
    """Certified root approximations of the defining polynomial."""
    return fld.complex_roots(precision_bits)


def fixed_subfield_basis(fld, inv) -> List:
    """Q-basis of {z : inv(z) = z}, first element 1.

    Works for NumberField and RelExt alike: both expose degree-like q-dim
    behaviour through inv.matrix and elem construction.
    """
    m = inv.matrix
    n = len(m)
    a = [[m[i][j] - (Q1 if i == j else Q0) for j in range(n)] for i in range(n)]
    ker = right_kernel(a)
    one = _field_one_coords(inv.field, n)
    rows = [one]
    for v in ker:
        if rank(mat(rows + [v])) > rank(mat(rows)):
            rows.append(v)
    if len(rows) != len(ker):
        raise PreconditionError("1 is not fixed by the involution")
    return [_field_elem_from_coords(inv.field, v) for v in rows]


def _field_one_coords(field, n):
    one = field.one()
    if hasattr(one, "coords"):
        c = one.coords()
    else:
        c = one.qcoords()
    return [QQ(x) for x in c] + [Q0] * (n - len(c))


def _field_elem_from_coords(field, v):
    if isinstance(field, NumberField):
        return field.elem(list(v))
    return field.elem_from_qcoords(list(v))


# -- reconstruction-backed operations ---------------------------------------------


def _field_qdim(field) -> int:
    return field.degree if isinstance(field, NumberField) else field.qdim


def _basis_values(field, basis_elems, prec_bits):
    if isinstance(field, NumberField):
        root = field.complex_roots(prec_bits)[0][0]
        return [b.embed(root) for b in basis_elems]
    return field.embed_many(basis_elems, prec_bits)


def nth_root(w, n: int, invariance: Optional[Involution] = None,
             precisions: Sequence[int] = PRECISION_LADDER,
             fixed_basis: Optional[List] = None):
    """z with z^n == w, exactly; optionally constrained to inv(z) == z.

    Raises NoRootInField / AmbiguousRoot per the conversion contract.
    `fixed_basis` may supply a precomputed basis of the invariant subspace.
    """
    field = w.parent
    if w.is_zero():
        raise PreconditionError("w must be nonzero")
    if invariance is not None and not invariance.is_identity():
        basis = fixed_basis if fixed_basis is not None \
            else fixed_subfield_basis(field, invariance)
    else:
        basis = _power_basis(field)
    for prec in precisions:
        with workprec(prec + 64):
            bv = _basis_values(field, basis, prec)
            wv = _embed_elem(field, w, prec)
            roots = _all_nth_roots(wv, n)
            found = []
            for rv in roots:
                for coords in recon.relation_candidates(rv, bv, prec):
                    z = _combine(field, basis, coords)
                    if z ** n == w and (invariance is None or invariance.apply(z) == z):
                        if not any(z == f for f in found):
                            found.append(z)
                        break
            if len(found) > 1:
                raise AmbiguousRoot(f"{len(found)} invariant {n}th roots found")
            if len(found) == 1:
                return found[0]
    raise NoRootInField(f"no {n}th root found up to {precisions[-1]} bits")


def _power_basis(field):
    if isinstance(field, NumberField):
        g = field.gen()
        out = [field.one()]
        for _ in range(field.degree - 1):
            out.append(out[-1] * g)
        return out
    return field.qbasis_elements()


def _embed_elem(field, z, prec_bits):
    if isinstance(field, NumberField):
        root = field.complex_roots(prec_bits)[0][0]
        return z.embed(root)
    return field.embed_many([z], prec_bits)[0]


def _all_nth_roots(wv: mpc, n: int) -> List[mpc]:
    from mpmath import exp, pi, mpc as _mpc
    r = abs(wv) ** (mpf(1) / n)
    theta = _arg(wv)
    return [r * exp(_mpc(0, (theta + 2 * pi * k) / n)) for k in range(n)]


def _arg(z: mpc):
    from mpmath import atan2
    return atan2(z.imag, z.real)


def _combine(field, basis, coords):
    z = field.zero()
    for c, b in zip(coords, basis):
        if c != 0:
            z = z + b * c
    return z


def roots_in_field(p, target, precisions: Sequence[int] = (256, 512, 1024)) -> List:
    """All roots of p lying in `target`, exactly verified.

    p is a QPoly over Q, or (for relative extensions) a polynomial with
    NFElem coefficients handled by the relext module's wrapper.  The default
    ladder is capped: roots actually present reconstruct at low precision,
    while roots absent from the field would otherwise burn the full ladder
    on every call (absence is a numeric judgement here; presence is exact).
    """
    if p.is_zero():
        raise PreconditionError("polynomial must be nonzero")
    if p.degree == 0:
        return []
    basis = _power_basis(target)
    found: List = []
    matched = set()
    for prec in precisions:
        with workprec(prec + 64):
            coeffs = [q_to_mpf(a) for a in reversed(p.c)]
            roots = _poly_complex_roots(coeffs, prec)
            bv = _basis_values(target, basis, prec)
            for idx, rv in enumerate(roots):
                if idx in matched:
                    continue
                for coords in recon.relation_candidates(rv, bv, prec):
                    z = _combine(target, basis, coords)
                    if _eval_in_field(p, z, target).is_zero():
                        if not any(z == f for f in found):
                            found.append(z)
                        matched.add(idx)
                        break
        if len(matched) == len(set(range(p.degree))):
            break
    return found


def _eval_in_field(p: QPoly, z, field):
    acc = field.zero()
    for a in reversed(p.c):
        acc = acc * z + field.one() * a
    return acc
