"""The field tower K ⊂ L+ ⊂ L ⊂ M with 3-torsion data and embeddings.

Everything is constructed algebraically: the second embedding pair
(iota10, iota01) comes from exact point arithmetic in E(M) together with
the coordinates-to-root polynomial u = W(x_T, y_T), and zeta3 is the Weil
pairing evaluated through tangent lines.  No numerics enter the tower.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Tuple

from .errors import NonGenericAction, PreconditionError
from .numfield import (Involution, NFElem, NumberField, fixed_subfield_basis,
                       poly_is_irreducible)
from .qmat import solve
from .qpoly import QPoly
from .rat import QQ
from .relext import MAutomorphism, MElem, RelExt, RelInvolution, lpoly_divmod


# -- generic short-Weierstrass point arithmetic -------------------------------------


class EPoint:
    """Affine point or infinity; coordinates in any exact field type."""

    __slots__ = ("x", "y", "inf")

    def __init__(self, x=None, y=None, inf: bool = False):
        self.x = x
        self.y = y
        self.inf = inf

    @staticmethod
    def infinity() -> "EPoint":
        return EPoint(inf=True)

    def __eq__(self, other):
        if self.inf or other.inf:
            return self.inf and other.inf
        return self.x == other.x and self.y == other.y

    def __repr__(self):
        return "EPoint(inf)" if self.inf else f"EPoint({self.x!r}, {self.y!r})"


def ec_neg(p: EPoint) -> EPoint:
    if p.inf:
        return p
    return EPoint(p.x, -p.y)


def ec_add(p: EPoint, q: EPoint, a4) -> EPoint:
    """Chord-tangent addition on y^2 = x^3 + a4 x + a6."""
    if p.inf:
        return q
    if q.inf:
        return p
    if p.x == q.x:
        if p.y == -q.y:
            return EPoint.infinity()
        lam = (p.x * p.x * 3 + a4) / (p.y * 2)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - p.x - q.x
    y3 = lam * (p.x - x3) - p.y
    return EPoint(x3, y3)


def ec_mul(k: int, p: EPoint, a4) -> EPoint:
    out = EPoint.infinity()
    add = p
    if k < 0:
        add = ec_neg(add)
        k = -k
    while k:
        if k & 1:
            out = ec_add(out, add, a4)
        add = ec_add(add, add, a4)
        k >>= 1
    return out


def chord_slope(p: EPoint, q: EPoint, a4):
    """lambda(P,Q): tangent slope if P == Q."""
    if p.inf or q.inf:
        raise PreconditionError("slope through infinity")
    if p == q:
        return (p.x * p.x * 3 + a4) / (p.y * 2)
    if p.x == q.x:
        raise PreconditionError("vertical chord has no finite slope")
    return (q.y - p.y) / (q.x - p.x)


# -- the tower ------------------------------------------------------------------------


Label = Tuple[int, int]  # coordinates w.r.t. the (T10, T01) basis, mod 3


@dataclass
class TorsionTower:
    a4: object
    a6: object
    disc_E: object
    L: NumberField
    x_T: NFElem
    y_T: NFElem
    lambda_T: NFElem
    sigma: Involution
    Lplus_basis: List[NFElem]
    M: RelExt
    tau: RelInvolution
    u10: MElem
    u01: MElem
    zeta3: MElem
    Mplus_basis: List[MElem]
    x_poly: QPoly  # x_T as polynomial in the generator
    y_poly: QPoly
    _iota10_pows: List[MElem] = dc_field(default_factory=list, repr=False)
    _iota01_pows: List[MElem] = dc_field(default_factory=list, repr=False)
    _roots_by_label: Dict[Label, MElem] = dc_field(default_factory=dict, repr=False)
    _root_pows: Dict[Label, List[MElem]] = dc_field(default_factory=dict, repr=False)
    _autos: Dict[Tuple[int, int, int, int], MAutomorphism] = dc_field(
        default_factory=dict, repr=False)

    # -- embeddings L -> M ------------------------------------------------------------

    def iota10(self, z: NFElem) -> MElem:
        return self._eval_pows(z, self._iota10_pows)

    def iota01(self, z: NFElem) -> MElem:
        return self._eval_pows(z, self._iota01_pows)

    def _eval_pows(self, z: NFElem, pows: List[MElem]) -> MElem:
        out = self.M.zero()
        for k in range(self.L.degree):
            c = z.poly[k]
            if c != 0:
                out = out + pows[k] * c
        return out

    # -- points ------------------------------------------------------------------------

    def a4_M(self) -> MElem:
        return self.M.from_rational(self.a4)

    def point_of_root(self, w: MElem) -> EPoint:
        x = _eval_qpoly_in(self.x_poly, w, self.M)
        y = _eval_qpoly_in(self.y_poly, w, self.M)
        return EPoint(x, y)

    def t_point_M(self) -> EPoint:
        uM = self.M.from_base(self.L.gen())
        return self.point_of_root(uM)

    def roots_by_label(self) -> Dict[Label, MElem]:
        """Root of f for each nontrivial label (i,j) in (T10,T01)-coordinates."""
        if not self._roots_by_label:
            a4m = self.a4_M()
            p10 = self.point_of_root(self.u10)
            p01 = self.point_of_root(self.u01)
            pts: Dict[Label, EPoint] = {}
            for i in range(3):
                for j in range(3):
                    if (i, j) == (0, 0):
                        continue
                    pts[(i, j)] = ec_add(ec_mul(i, p10, a4m), ec_mul(j, p01, a4m), a4m)
            cands = [self.M.from_base(self.L.gen()), self.M.gen(), self.u10, self.u01]
            cands += [-r for r in cands]
            cand_pts = [(r, self.point_of_root(r)) for r in cands]
            labelled: Dict[Label, MElem] = {}
            for lab, pt in pts.items():
                hit = next((r for r, rp in cand_pts if rp == pt), None)
                if hit is None:
                    hit = self.root_from_point(pt)
                labelled[lab] = hit
            self._roots_by_label = labelled
        return self._roots_by_label

    def root_from_point(self, pt: EPoint) -> MElem:
        """W(x,y): the root of f whose torsion point has these coordinates."""
        w = self._w_combination(pt.x, pt.y)
        assert _eval_qpoly_in(self.L.poly, w, self.M).is_zero()
        return w

    def _w_combination(self, x: MElem, y: MElem) -> MElem:
        out = self.M.zero()
        xp = self.M.one()
        k = 0
        for i in range(4):
            for j in range(2):
                c = self._w_coeffs[k]
                k += 1
                if c != 0:
                    term = xp * c if j == 0 else xp * y * c
                    out = out + term
            xp = xp * x if i < 3 else xp
        return out

    def root_powers(self, lab: Label) -> List[MElem]:
        if lab not in self._root_pows:
            r = self.roots_by_label()[lab]
            pows = [self.M.one()]
            for _ in range(self.L.degree - 1):
                pows.append(pows[-1] * r)
            self._root_pows[lab] = pows
        return self._root_pows[lab]

    def value_at_label(self, z: NFElem, lab: Label) -> MElem:
        """Image of z in M under the embedding u -> root(lab)."""
        pows = self.root_powers(lab)
        out = self.M.zero()
        for k in range(self.L.degree):
            c = z.poly[k]
            if c != 0:
                out = out + pows[k] * c
        return out

    def label_of_v(self) -> Label:
        for lab, r in self.roots_by_label().items():
            if r == self.M.gen():
                return lab
        raise PreconditionError("v has no label (tower inconsistent)")

    # -- Galois automorphisms -----------------------------------------------------------

    def automorphism(self, g: Tuple[int, int, int, int]) -> MAutomorphism:
        """Automorphism for g = (a,b,c,d) acting on labels by the matrix [[a,b],[c,d]]."""
        g = tuple(x % 3 for x in g)
        if g not in self._autos:
            a, b, c, d = g
            if (a * d - b * c) % 3 == 0:
                raise PreconditionError("matrix not invertible mod 3")
            labels = self.roots_by_label()
            lv = self.label_of_v()
            t_lab = (1, 1)
            u_img = labels[_apply_label(g, t_lab)]
            v_img = labels[_apply_label(g, lv)]
            self._autos[g] = MAutomorphism(self.M, u_img, v_img)
        return self._autos[g]


def _apply_label(g, lab: Label) -> Label:
    a, b, c, d = g
    return ((a * lab[0] + b * lab[1]) % 3, (c * lab[0] + d * lab[1]) % 3)


def _eval_qpoly_in(p: QPoly, z, field):
    acc = field.zero()
    for a in reversed(p.c):
        acc = acc * z + field.from_rational(a)
    return acc


# -- construction -----------------------------------------------------------------------


def derive_tower(a4, a6, f: QPoly, x_T_coords: QPoly, y_T_coords: QPoly) -> TorsionTower:
    """Assemble the tower from a 3-torsion point on y^2 = x^3 + a4 x + a6.

    Verifies the curve equation, 3-torsion relation, and the generic Galois
    action (via a degree-48 primitive element of M); rejects everything else
    with NonGenericAction.
    """
    a4, a6 = QQ(a4), QQ(a6)
    disc_e = QQ(-16) * (4 * a4 ** 3 + 27 * a6 ** 2)
    if disc_e == 0:
        raise PreconditionError("singular curve")
    if not f.is_monic() or f.degree != 8:
        raise NonGenericAction("defining polynomial must be monic of degree 8")
    if not poly_is_irreducible(f):
        raise NonGenericAction("defining polynomial reducible: non-generic action")
    L = NumberField(f, check_irreducible=False)
    x_T = L.elem(x_T_coords)
    y_T = L.elem(y_T_coords)
    if not (y_T * y_T == x_T ** 3 + x_T * a4 + L.from_rational(a6)):
        raise PreconditionError("torsion coordinates do not satisfy the curve")
    if y_T.is_zero():
        raise PreconditionError("2-torsion point supplied")
    lam = (x_T * x_T * 3 + L.from_rational(a4)) / (y_T * 2)
    if not (lam * lam - x_T * 2 == x_T):
        raise PreconditionError("point is not 3-torsion (2T != -T)")
    # sigma: the automorphism sending T to -T
    sigma = _find_sigma(L, f, x_T, y_T)
    lplus = fixed_subfield_basis(L, sigma)
    # relative extension by the remaining sextic factor
    u = L.gen()
    num = [L.from_rational(c) for c in f.c]
    # (X - u)(X - sigma(u)) = X^2 - (u + sigma(u)) X + u sigma(u)
    den_lin = [u * sigma.generator_image, -(u + sigma.generator_image), L.one()]
    g, rem = lpoly_divmod(num, den_lin, L)
    if any(not r.is_zero() for r in rem):
        raise PreconditionError("f not divisible by (X-u)(X-sigma(u))")
    M = RelExt(L, g)
    tower = _assemble(a4, a6, disc_e, L, x_T, y_T, lam, sigma, lplus, M,
                      x_T_coords, y_T_coords)
    _genericity_certificate(tower)
    return tower


def _find_sigma(L: NumberField, f: QPoly, x_T: NFElem, y_T: NFElem) -> Involution:
    u = L.gen()
    candidates = []
    if all(f[i] == 0 for i in range(1, f.degree + 1, 2)):
        candidates.append(-u)

    def try_one(img):
        try:
            s = Involution(L, img)
        except PreconditionError:
            return None
        if s.apply(x_T) == x_T and s.apply(y_T) == -y_T:
            return s
        return None

    for img in candidates:
        s = try_one(img)
        if s is not None:
            return s
    from .numfield import roots_in_field
    for img in roots_in_field(f, L):
        if img == u:
            continue
        s = try_one(img)
        if s is not None:
            return s
    raise NonGenericAction("no involution sends T to -T")


def _assemble(a4, a6, disc_e, L, x_T, y_T, lam, sigma, lplus, M,
              x_poly, y_poly) -> TorsionTower:
    # W: express u as a polynomial in (x_T, y_T); fails iff they do not generate L
    n = L.degree
    cols = []
    xp = L.one()
    basis_elems = []
    for i in range(4):
        for j in range(2):
            e = xp if j == 0 else xp * y_T
            basis_elems.append(e)
            cols.append(e.coords())
        if i < 3:
            xp = xp * x_T
    a_mat = [list(col) for col in zip(*cols)]
    w_coeffs = solve(a_mat, L.gen().coords())
    if w_coeffs is None:
        raise NonGenericAction("x_T, y_T do not generate L")

    tower = TorsionTower(
        a4=QQ(a4), a6=QQ(a6), disc_E=disc_e, L=L, x_T=x_T, y_T=y_T,
        lambda_T=lam, sigma=sigma, Lplus_basis=lplus, M=M,
        tau=None, u10=None, u01=None, zeta3=None, Mplus_basis=None,
        x_poly=x_poly, y_poly=y_poly)
    tower._w_coeffs = [QQ(c) for c in w_coeffs]

    a4m = M.from_rational(a4)
    v = M.gen()
    t_m = tower.t_point_M()
    p_v = tower.point_of_root(v)
    tau, u10 = _find_tau_and_u10(tower, M, sigma, t_m, p_v, a4m)
    u01 = tau.apply(u10)
    tower.tau = tau
    tower.u10 = u10
    tower.u01 = u01
    p10 = tower.point_of_root(u10)
    p01 = tower.point_of_root(u01)
    if not ec_add(p10, p01, a4m) == t_m:
        raise PreconditionError("pairing condition iota10(T)+iota01(T) = T failed")
    # embedding powers
    tower._iota10_pows = _powers(M, u10, L.degree)
    tower._iota01_pows = _powers(M, u01, L.degree)
    # M+ basis: even v-powers when tau is v -> -v, else the fixed-space kernel
    if tau.generator_image == -v:
        mplus = []
        for b in range(0, M.reldeg, 2):
            for a in range(L.degree):
                cs = [L.zero()] * M.reldeg
                cs[b] = L.elem(QPoly.x(a) if a else QPoly([1]))
                mplus.append(MElem(M, cs))
    else:
        mplus = fixed_subfield_basis(M, tau)
    tower.Mplus_basis = mplus
    # Weil pairing zeta3 = e3(T10, T01) through tangent lines
    tower.zeta3 = _weil_e3(tower, p10, p01, t_m)
    return tower


def _find_tau_and_u10(tower: TorsionTower, M: RelExt, sigma: Involution,
                      t_m: EPoint, p_v: EPoint, a4m: MElem):
    """The transpose-type involution and the T10 root.

    Fast path: when g is even, tau: v -> -v works and the pair root is
    -(T + P_v).  Otherwise every involution of Gal(M/L) is tried against
    every root until S + tau(S) = T with S, tau(S) independent.
    """
    v = M.gen()
    g_even = all(c.is_zero() for c in M.g[1::2])
    if g_even:
        tau = RelInvolution(M, -v)
        s_pt = ec_neg(ec_add(t_m, p_v, a4m))
        return tau, tower.root_from_point(s_pt)
    # general path: assemble all eight roots with their points
    pts = [t_m, p_v, ec_add(t_m, p_v, a4m),
           ec_add(t_m, ec_neg(p_v), a4m)]
    pts = pts + [ec_neg(p) for p in pts]
    pairs = []
    u_m = M.from_base(sigma.field.gen())
    known = [(u_m, t_m), (-u_m, ec_neg(t_m)), (v, p_v), (-v, ec_neg(p_v))]
    for pt in pts:
        hit = next((r for r, rp in known if rp == pt), None)
        pairs.append((hit if hit is not None else tower.root_from_point(pt), pt))
    neg_t = ec_neg(t_m)
    for r, rp in pairs:
        if rp == t_m or rp == neg_t or r == v:
            continue
        try:
            tau = RelInvolution(M, r)
        except PreconditionError:
            continue
        for rs, ps in pairs:
            if ps == neg_t:
                continue
            if ec_add(ps, tower.point_of_root(tau.apply(rs)), a4m) == t_m:
                return tau, rs
    raise NonGenericAction("transpose involution of M not found "
                           "(non-generic tower shape)")


def _powers(M: RelExt, z: MElem, count: int) -> List[MElem]:
    out = [M.one()]
    for _ in range(count - 1):
        out.append(out[-1] * z)
    return out


def _tangent_value(at: EPoint, p: EPoint, a4) -> MElem:
    """F_S(P) = (y_P - y_S) - lambda_S (x_P - x_S); S = `at` must be affine."""
    lam = chord_slope(at, at, a4)
    return (p.y - at.y) - lam * (p.x - at.x)


def _weil_e3(tower: TorsionTower, s_pt: EPoint, t_pt: EPoint, r_pt: EPoint) -> MElem:
    """e3(S,T) = f_S(D_T)/f_T(D_S), f_S the tangent line at S.

    D_T = (T+R1) - (R1), D_S = (S+R2) - (R2) with R1 = T11 and R2 = -T11;
    the supports are disjoint (no tame-symbol sign enters) and avoid the
    zeros and poles of both tangent functions.
    """
    a4m = tower.a4_M()
    r1 = r_pt
    r2 = ec_neg(r_pt)
    tr1 = ec_add(t_pt, r1, a4m)
    sr2 = ec_add(s_pt, r2, a4m)
    num = _tangent_value(s_pt, tr1, a4m) * _tangent_value(t_pt, r2, a4m)
    den = _tangent_value(s_pt, r1, a4m) * _tangent_value(t_pt, sr2, a4m)
    z = num / den
    one = tower.M.one()
    if z == one or not (z * z + z + one).is_zero():
        raise NonGenericAction("Weil pairing did not produce a primitive cube root")
    return z


def _genericity_certificate(tower: TorsionTower) -> None:
    """[M:Q] = 48 iff the mod-3 image is all of GL2; certify by minpoly degree."""
    M = tower.M
    v = M.gen()
    u = M.from_base(tower.L.gen())
    for k in (2, 1, 3, 4, 5):
        w = v + u * k
        if w.minimal_poly_abs().degree == M.qdim:
            return
    raise NonGenericAction("no degree-48 primitive element found: "
                           "Galois action appears non-generic")


# -- building a tower from scratch ----------------------------------------------------


def build_torsion_data(a4, a6) -> Tuple[QPoly, QPoly, QPoly]:
    """Best-effort (f, x_T, y_T) for the curve y^2 = x^3 + a4 x + a6.

    Works in the 8-dimensional algebra Q[x,y]/(psi3, y^2 - rhs) and picks a
    generator among y + k x whose minimal polynomial has degree 8.
    """
    a4, a6 = QQ(a4), QQ(a6)
    if QQ(-16) * (4 * a4 ** 3 + 27 * a6 ** 2) == 0:
        raise PreconditionError("singular curve")
    psi3 = QPoly([-a4 * a4, 12 * a6, 6 * a4, 0, 3])
    if not poly_is_irreducible(psi3):
        raise NonGenericAction("3-division polynomial reducible over Q")

    def reduce_x(p: QPoly) -> QPoly:
        return p % psi3.monic()

    rhs = QPoly([a6, a4, 0, 1])

    def mul8(z1, z2):
        # z = (p0(x), p1(x)) representing p0 + p1*y
        p0 = reduce_x(z1[0] * z2[0] + z1[1] * z2[1] * rhs)
        p1 = reduce_x(z1[0] * z2[1] + z1[1] * z2[0])
        return (p0, p1)

    def coords8(z) -> List:
        return [z[0][i] for i in range(4)] + [z[1][i] for i in range(4)]

    from .numfield import minimal_poly_from_mul

    for k in range(0, 9):
        w = (QPoly([0, QQ(k)]), QPoly([1]))  # y + k x

        def mulw(vec):
            z = (QPoly(vec[:4]), QPoly(vec[4:]))
            return coords8(mul8(z, w))

        mp = minimal_poly_from_mul(coords8((QPoly([1]), QPoly())), mulw)
        if mp.degree == 8 and poly_is_irreducible(mp):
            # express x and y in powers of w
            pows = [(QPoly([1]), QPoly())]
            for _ in range(7):
                pows.append(mul8(pows[-1], w))
            a_mat = [list(col) for col in zip(*[coords8(p) for p in pows])]
            x_sol = solve(a_mat, coords8((QPoly.x(1), QPoly())))
            y_sol = solve(a_mat, coords8((QPoly(), QPoly([1]))))
            if x_sol is None or y_sol is None:
                continue
            return _reduce_generator(mp, QPoly(x_sol), QPoly(y_sol))
    raise NonGenericAction("no degree-8 generator found (non-generic action)")


def _reduce_generator(f: QPoly, x_poly: QPoly, y_poly: QPoly,
                      prec_bits: int = 512):
    """Best-effort generator reduction: T2-LLL on the Z[c*theta] power basis.

    Replaces the generator by a short lattice vector that still has a
    degree-8 minimal polynomial; heights drop dramatically for raw
    division-polynomial towers.  Falls back to the input on any failure.
    """
    from mpmath import workprec

    from .lll import lll_gram
    from .numfield import NumberField
    from .rat import lcm_list

    try:
        c = lcm_list([a.denominator for a in f.c])
        f_int = QPoly([f[i] * QQ(c) ** (f.degree - i) for i in range(f.degree + 1)])
        field = NumberField(f_int, check_irreducible=False)
        n = field.degree
        # enlarge Z[theta] at the small primes of the discriminant; without
        # this the power lattice has no shorter generators at all
        from .factorint import partial_factor_small
        from .orders import NFOrder, _p_maximalize
        small, _cof = partial_factor_small(int(f_int.disc()))
        order = NFOrder(field, [[QQ(1) if i == j else QQ(0) for j in range(n)]
                                for i in range(n)])
        for p, e in small:
            if e >= 2:
                order = _p_maximalize(order, p)
        def compute_gram(prec):
            roots = field.complex_roots(prec)
            with workprec(2 * prec + 64):
                emb = []
                for r, _rad in roots:
                    pws = [r ** 0]
                    for _ in range(n - 1):
                        pws.append(pws[-1] * r)
                    emb.append(pws)

                def val(row, k):
                    from .numfield import q_to_mpf
                    acc = emb[k][0] * 0
                    for t, x in enumerate(row):
                        if x != 0:
                            acc += q_to_mpf(x) * emb[k][t]
                    return acc

                vals = [[val(row, k) for k in range(n)] for row in order.rows]
                return [[sum((vals[i][k] * vals[j][k].conjugate()).real
                             for k in range(n)) for j in range(n)]
                        for i in range(n)]

        # skewed lattices need scale-aware rounding (see _pd_rounded_gram)
        from .csa import _pd_rounded_gram
        gr = _pd_rounded_gram(compute_gram, n, prec_bits)
        scale = lcm_list([x.denominator for row in gr for x in row])
        u, _ = lll_gram([[int(x * scale) for x in row] for row in gr])
        for cand in u:
            coords = [sum(QQ(cand[t]) * order.rows[t][j] for t in range(n))
                      for j in range(n)]
            z = field.elem(coords)
            mz = z.minimal_poly()
            if mz.degree != n or not mz.is_integral():
                continue
            pows = [field.one()]
            for _ in range(n - 1):
                pows.append(pows[-1] * z)
            a_mat = [list(col) for col in zip(*[p.coords() for p in pows])]
            # x_poly, y_poly are in the original theta = field.gen()/c
            theta = field.gen()
            xv = _eval_scaled(x_poly, theta, c, field)
            yv = _eval_scaled(y_poly, theta, c, field)
            xs = solve(a_mat, xv.coords())
            ys = solve(a_mat, yv.coords())
            if xs is None or ys is None:
                continue
            return mz, QPoly(xs), QPoly(ys)
    except Exception:
        pass
    return f, x_poly, y_poly


def _eval_scaled(p: QPoly, theta, c, field):
    """p(theta/c) evaluated in the field."""
    acc = field.zero()
    inv_c = QQ(1, c)
    pw = field.one()
    for i in range(p.degree + 1):
        if p[i] != 0:
            acc = acc + pw * (p[i] * inv_c ** i)
        pw = pw * theta
    return acc
