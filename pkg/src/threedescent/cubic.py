"""Ternary cubics: invariants (c4, c6, disc, j) and local solubility.

Invariants are computed through the Hessian pencil: Hess(l*F + m*H)
decomposes over (F, H) with coefficients that are the degree-4 and degree-6
invariants up to universal constants; the constants are pinned so that the
Weierstrass cubic y^2 z - x^3 - A x z^2 - B z^3 gets c4 = -48A, c6 = -864B.
Degenerate inputs fall back to interpolation along a pencil with a fixed
generic cubic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Tuple

from .errors import PreconditionError
from .qmat import inverse, mat, rref, solve
from .rat import QQ, Q0, Q1, lcm_list

MONOMIALS = [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (1, 0, 2),
             (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3)]
MONOMIAL_ORDER = "x3,x2y,x2z,xy2,xyz,xz2,y3,y2z,yz2,z3"

# pinned by the Weierstrass normalization (c4, c6) = (-48A, -864B)
_GAMMA4 = QQ(1, 12)
_GAMMA6 = QQ(-1, 48)

Poly3 = Dict[Tuple[int, int, int], object]


@dataclass
class TernaryCubic:
    coeffs: List  # 10 rationals in MONOMIALS order

    @staticmethod
    def from_coeffs(coeffs) -> "TernaryCubic":
        cs = [QQ(c) for c in coeffs]
        if len(cs) != 10:
            raise PreconditionError("a ternary cubic has 10 coefficients")
        if all(c == 0 for c in cs):
            raise PreconditionError("zero cubic")
        return TernaryCubic(cs)

    def as_dict(self) -> Poly3:
        return {m: c for m, c in zip(MONOMIALS, self.coeffs) if c != 0}

    def evaluate(self, x, y, z):
        tot = 0
        for (i, j, k), c in zip(MONOMIALS, self.coeffs):
            if c != 0:
                tot += c * x ** i * y ** j * z ** k
        return tot

    def primitive(self) -> "TernaryCubic":
        den = lcm_list([c.denominator for c in self.coeffs])
        cs = [c * den for c in self.coeffs]
        from .rat import gcd
        g = 0
        for c in cs:
            g = gcd(g, int(c))
        if g:
            cs = [QQ(int(c) // g) for c in cs]
        lead = next(c for c in cs if c != 0)
        if lead < 0:
            cs = [-c for c in cs]
        return TernaryCubic(cs)

    def scale_vars(self, g: List[List]) -> "TernaryCubic":
        """Substitute (x,y,z) -> g @ (x,y,z)^T."""
        lin = [{(1, 0, 0): QQ(g[i][0]), (0, 1, 0): QQ(g[i][1]),
                (0, 0, 1): QQ(g[i][2])} for i in range(3)]
        out: Poly3 = {}
        for (i, j, k), c in zip(MONOMIALS, self.coeffs):
            if c == 0:
                continue
            term: Poly3 = {(0, 0, 0): QQ(c)}
            for _ in range(i):
                term = _pmul(term, lin[0])
            for _ in range(j):
                term = _pmul(term, lin[1])
            for _ in range(k):
                term = _pmul(term, lin[2])
            for m, v in term.items():
                out[m] = out.get(m, Q0) + v
        return TernaryCubic([out.get(m, Q0) for m in MONOMIALS])

    def invariants(self) -> Tuple:
        """(c4, c6, disc, j); j is None when disc == 0."""
        s_val, t_val = _pencil_invariants_robust(self.as_dict())
        c4 = _GAMMA4 * s_val
        c6 = _GAMMA6 * t_val
        disc = (c4 ** 3 - c6 ** 2) / 1728
        j = None if disc == 0 else c4 ** 3 / disc
        return c4, c6, disc, j

    def disc(self):
        return self.invariants()[2]

    def is_nonsingular(self) -> bool:
        return self.disc() != 0

    def partials(self) -> List[Poly3]:
        fd = self.as_dict()
        return [_deriv(fd, v) for v in range(3)]


def weierstrass_cubic(a4, a6) -> TernaryCubic:
    """y^2 z - x^3 - a4 x z^2 - a6 z^3."""
    cs = [Q0] * 10
    cs[MONOMIALS.index((3, 0, 0))] = QQ(-1)
    cs[MONOMIALS.index((0, 2, 1))] = Q1
    cs[MONOMIALS.index((1, 0, 2))] = -QQ(a4)
    cs[MONOMIALS.index((0, 0, 3))] = -QQ(a6)
    return TernaryCubic(cs)


# -- polynomial helpers ---------------------------------------------------------------


def _pmul(a: Poly3, b: Poly3) -> Poly3:
    out: Poly3 = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
            out[m] = out.get(m, Q0) + ca * cb
    return {m: c for m, c in out.items() if c != 0}


def _padd(a: Poly3, b: Poly3, s=Q1) -> Poly3:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, Q0) + s * c
    return {m: c for m, c in out.items() if c != 0}


def _deriv(a: Poly3, var: int) -> Poly3:
    out: Poly3 = {}
    for m, c in a.items():
        if m[var] > 0:
            m2 = list(m)
            m2[var] -= 1
            out[tuple(m2)] = out.get(tuple(m2), Q0) + c * m[var]
    return out


def hessian(f: Poly3) -> Poly3:
    d2 = [[_deriv(_deriv(f, i), j) for j in range(3)] for i in range(3)]
    out: Poly3 = {}
    for (p0, p1, p2), sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                               ((2, 1, 0), -1), ((1, 0, 2), -1), ((0, 2, 1), -1)):
        term = _pmul(_pmul(d2[0][p0], d2[1][p1]), d2[2][p2])
        out = _padd(out, term, QQ(sign))
    return out


def _cubic_vec(f: Poly3) -> List:
    return [f.get(m, Q0) for m in MONOMIALS]


def _pencil_invariants(f: Poly3) -> Optional[Tuple]:
    """(S, T) from the decomposition of Hess(lF + mH) over (F, H)."""
    h = hessian(f)
    fv = _cubic_vec(f)
    hv = _cubic_vec(h)
    _r, piv = rref(mat([fv, hv]))
    if len(piv) != 2:
        return None
    c21, c12 = _hessian_pencil_coeffs(f, h)
    sol21 = _solve_in_span(fv, hv, _cubic_vec(c21))
    sol12 = _solve_in_span(fv, hv, _cubic_vec(c12))
    if sol21 is None or sol12 is None:
        return None
    a21, b21 = sol21
    a12, _b12 = sol12
    if b21 != 0:
        return None
    return a21, a12


def _hessian_pencil_coeffs(f: Poly3, h: Poly3) -> Tuple[Poly3, Poly3]:
    """Coefficients of l^2 m and l m^2 in Hess(l f + m h), by sampling."""
    pts = [(1, 0), (0, 1), (1, 1), (1, -1)]
    samples = []
    for (l, m) in pts:
        g = _padd({k: QQ(l) * v for k, v in f.items()}, h, QQ(m))
        samples.append(hessian(g))
    v = [[QQ(l) ** 3, QQ(l) ** 2 * m, QQ(l) * m * m, QQ(m) ** 3] for (l, m) in pts]
    vinv = inverse(v)
    keys = set()
    for s in samples:
        keys |= set(s.keys())
    c21: Poly3 = {}
    c12: Poly3 = {}
    for k in keys:
        vals = [s.get(k, Q0) for s in samples]
        x21 = sum((vinv[1][t] * vals[t] for t in range(4)), Q0)
        x12 = sum((vinv[2][t] * vals[t] for t in range(4)), Q0)
        if x21 != 0:
            c21[k] = x21
        if x12 != 0:
            c12[k] = x12
    return c21, c12


def _solve_in_span(fv, hv, target) -> Optional[Tuple]:
    a = [list(col) for col in zip(*mat([fv, hv]))]
    sol = solve(a, target)
    if sol is None:
        return None
    return sol[0], sol[1]


_GENERIC = {(3, 0, 0): QQ(1), (0, 3, 0): QQ(2), (0, 0, 3): QQ(3),
            (1, 1, 1): QQ(5), (2, 1, 0): QQ(7), (0, 2, 1): QQ(1),
            (1, 0, 2): QQ(4)}


def _pencil_invariants_robust(f: Poly3) -> Tuple:
    direct = _pencil_invariants(f)
    if direct is not None:
        return direct
    # interpolate S(F + tG) (degree 4 in t) and T(F + tG) (degree 6)
    samples: List[Tuple] = []
    t = 1
    while len(samples) < 7 and t < 200:
        g = _padd(f, _GENERIC, QQ(t))
        got = _pencil_invariants(g)
        if got is not None:
            samples.append((QQ(t), got[0], got[1]))
        t += 1
    if len(samples) < 7:
        raise PreconditionError("invariant interpolation failed")
    s0 = _lagrange_at_zero([(tv, sv) for tv, sv, _ in samples[:5]])
    t0 = _lagrange_at_zero([(tv, tv6) for tv, _, tv6 in samples[:7]])
    return s0, t0


def _lagrange_at_zero(points):
    total = Q0
    for i, (xi, yi) in enumerate(points):
        term = yi
        for j, (xj, _) in enumerate(points):
            if i != j:
                term = term * (Q0 - xj) / (xi - xj)
        total += term
    return total


# -- local solubility --------------------------------------------------------------------


def locally_soluble(cubic: TernaryCubic, p) -> bool:
    """Q_p-solubility of F = 0 (p a prime, or "real").

    Brute force over P^2(F_p) with smooth-point Hensel lifting and recursive
    refinement of singular residue points; refinement depth is capped at
    2 v_p(disc F) + 3, past which no branch can hide a point.
    """
    if p in ("real", "inf", "oo", "infinity"):
        # a line section has odd degree, so real points always exist
        return True
    p = int(p)
    f = cubic.primitive()
    disc = f.disc()
    if disc == 0:
        raise PreconditionError("cubic must be nonsingular")
    vp = 0
    dnum = abs(int(QQ(disc).numerator))
    while dnum % p == 0:
        dnum //= p
        vp += 1
    depth_cap = 2 * vp + 3
    fd = {m: int(c) for m, c in zip(MONOMIALS, f.coeffs)}
    return any(_chart_has_point(fd, p, chart, depth_cap) for chart in range(3))


def _eval_mod(fd, x, y, z, mod) -> int:
    tot = 0
    for (i, j, k), c in fd.items():
        tot += c * pow(x, i, mod) * pow(y, j, mod) * pow(z, k, mod)
    return tot % mod


def _chart_points(p: int, chart: int):
    if chart == 0:
        for y in range(p):
            for z in range(p):
                yield (1, y, z)
    elif chart == 1:
        for z in range(p):
            yield (0, 1, z)
    else:
        yield (0, 0, 1)


def _grad3(fd):
    out = []
    for var in range(3):
        d = {}
        for m, c in fd.items():
            if m[var] > 0:
                m2 = list(m)
                m2[var] -= 1
                d[tuple(m2)] = d.get(tuple(m2), 0) + c * m[var]
        out.append(d)
    return out


def _chart_has_point(fd, p: int, chart: int, depth_cap: int) -> bool:
    grads = _grad3(fd)
    for pt in _chart_points(p, chart):
        if _eval_mod(fd, *pt, p) != 0:
            continue
        # Euler's relation makes "some partial != 0" equivalent to "some
        # free-variable partial != 0" at a zero with the chart coord = 1
        if any(_eval_mod(g, *pt, p) != 0 for g in grads):
            return True
        free = [v for v in range(3) if v != chart]
        biv = {}
        for (i, j, k), c in fd.items():
            e = (i, j, k)
            key = (e[free[0]], e[free[1]])
            biv[key] = biv.get(key, 0) + c
        if _refine_bivar(biv, p, pt[free[0]], pt[free[1]], depth_cap):
            return True
    return False


def _bivar_eval(g, s, t, mod) -> int:
    tot = 0
    for (i, j), c in g.items():
        tot += c * pow(s, i, mod) * pow(t, j, mod)
    return tot % mod


def _bivar_grad(g):
    gs, gt = {}, {}
    for (i, j), c in g.items():
        if i:
            gs[(i - 1, j)] = gs.get((i - 1, j), 0) + c * i
        if j:
            gt[(i, j - 1)] = gt.get((i, j - 1), 0) + c * j
    return gs, gt


def _shift_scale(g, p: int, s0: int, t0: int):
    """g(s0 + p s, t0 + p t) with the p-content divided out."""
    out = {}
    for (i, j), c in g.items():
        for a in range(i + 1):
            for b in range(j + 1):
                val = c * comb(i, a) * comb(j, b) * \
                    (s0 ** (i - a)) * (t0 ** (j - b)) * p ** (a + b)
                key = (a, b)
                out[key] = out.get(key, 0) + val
    out = {k: v for k, v in out.items() if v != 0}
    if not out:
        return out
    while all(v % p == 0 for v in out.values()):
        out = {k: v // p for k, v in out.items()}
    return out


def _refine_bivar(g, p: int, s0: int, t0: int, depth: int) -> bool:
    g2 = _shift_scale(g, p, s0, t0)
    if not g2:
        return True
    if depth <= 0:
        return False
    gs, gt = _bivar_grad(g2)
    for s in range(p):
        for t in range(p):
            if _bivar_eval(g2, s, t, p) != 0:
                continue
            if _bivar_eval(gs, s, t, p) != 0 or _bivar_eval(gt, s, t, p) != 0:
                return True
            if _refine_bivar(g2, p, s, t, depth - 1):
                return True
    return False
