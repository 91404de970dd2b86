"""Structure-constant algebras over Q: the obstruction algebra, orders,
maximal orders, and explicit trivialisation A = Mat_3(Q).

The split test is the discriminant criterion: a maximal order of
discriminant 1 plus the zero-divisor construction yields matrices
satisfying the structure constants exactly; discriminant != 1 certifies
non-splitness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from mpmath import ldexp, mp, mpf, workprec

from . import lattices as lat
from . import modp
from .errors import (FormNotPositiveDefinite, NoRealSplitFound, NotAnOrder,
                     NoZeroDivisorFound, PreconditionError)
from .factorint import IntFactorization, factor_integer
from .lll import lll_gram
from .numfield import minimal_poly_from_mul, q_to_mpf
from .qmat import det, inverse, mat, mat_mul, rank, rref, right_kernel, solve
from .qpoly import QPoly
from .rat import QQ, Q0, Q1, lcm_list


class StructureAlgebra:
    """Associative unital Q-algebra by structure constants c[i][j][k]."""

    def __init__(self, dim: int, table, check: bool = True):
        self.dim = dim
        self.table = [[[QQ(x) for x in cell] for cell in row] for row in table]
        self._lmats = [self._lmat(i) for i in range(dim)]
        self.identity_coords = self._find_identity()
        if check:
            self._check_associative()

    def _lmat(self, i: int) -> List[List]:
        # (a_i * x)_k = sum_j x_j c[i][j][k]; rows t -> coords of a_i a_t
        return [self.table[i][t] for t in range(self.dim)]

    def _find_identity(self) -> List:
        n = self.dim
        rows = []
        rhs = []
        for j in range(n):
            for k in range(n):
                rows.append([self.table[i][j][k] for i in range(n)])
                rhs.append(Q1 if k == j else Q0)
        e = solve(rows, rhs)
        if e is None:
            raise PreconditionError("algebra has no left identity")
        # check it is two-sided
        for j in range(n):
            if self.mul_coords(self._unit(j), e) != self._unit(j):
                raise PreconditionError("identity is not two-sided")
        return e

    def _unit(self, j: int) -> List:
        return [Q1 if t == j else Q0 for t in range(self.dim)]

    def _check_associative(self) -> None:
        n = self.dim
        for i in range(n):
            li = mat(self._lmats[i])
            for j in range(n):
                lhs = mat_mul(mat(self._lmats[j]), li)  # x -> a_i (a_j x)? see below
                rhs_rows = []
                cij = self.table[i][j]
                for t in range(n):
                    rhs_rows.append([
                        sum((cij[k] * self.table[k][t][s] for k in range(n)
                             if cij[k] != 0), Q0) for s in range(n)])
                if lhs != mat(rhs_rows):
                    raise PreconditionError(
                        f"structure constants not associative at ({i},{j})")

    # row-vector convention: coords(x*y) = mul_coords(x, y)
    def mul_coords(self, x: Sequence, y: Sequence) -> List:
        n = self.dim
        out = [Q0] * n
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            ti = self.table[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cij = ti[j]
                f = xi * yj
                for k in range(n):
                    if cij[k] != 0:
                        out[k] += f * cij[k]
        return out

    def left_mult_matrix(self, x: Sequence) -> List[List]:
        """Rows t -> coords of x * e_t (so that v @ 1 etc. stay row-style)."""
        n = self.dim
        return [self.mul_coords(x, self._unit(t)) for t in range(n)]

    def right_mult_matrix(self, x: Sequence) -> List[List]:
        n = self.dim
        return [self.mul_coords(self._unit(t), x) for t in range(n)]

    def elem(self, coords) -> "AlgElem":
        return AlgElem(self, [QQ(c) for c in coords])

    def one(self) -> "AlgElem":
        return AlgElem(self, list(self.identity_coords))

    @property
    def degree(self) -> int:
        n = round(self.dim ** 0.5)
        if n * n != self.dim:
            raise PreconditionError("algebra dimension is not a square")
        return n


@dataclass
class AlgElem:
    parent: StructureAlgebra
    coords: List

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.parent, self.parent.mul_coords(self.coords, other.coords))

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __eq__(self, other) -> bool:
        return self.coords == other.coords

    def scale(self, s) -> "AlgElem":
        return AlgElem(self.parent, [QQ(s) * a for a in self.coords])

    def min_poly(self) -> QPoly:
        one = self.parent.identity_coords

        def mul(v):
            return self.parent.mul_coords(v, self.coords)

        return minimal_poly_from_mul(one, mul)

    def reduced_trace(self):
        n = self.parent.degree
        lm = self.parent.left_mult_matrix(self.coords)
        tr = sum((lm[t][t] for t in range(self.parent.dim)), Q0)
        return tr / n

    def rank_of(self) -> int:
        n = self.parent.degree
        lm = self.parent.left_mult_matrix(self.coords)
        r = rank(mat(lm))
        if r % n != 0:
            raise PreconditionError("rank of left multiplication not divisible by n "
                                    "(algebra not central simple of this degree?)")
        return r // n


# -- the obstruction algebra -----------------------------------------------------------


def obstruction_algebra(rho_data, tower, basis_L: Sequence) -> StructureAlgebra:
    """Structure constants of (R, +, *_{eps rho}) over r_1=(1,0), r_{i+1}=(0,u_i)."""
    L = tower.L
    M = tower.M
    n_l = L.degree
    if len(basis_L) != n_l:
        raise PreconditionError("basis_L must have 8 elements")
    er = rho_data.eps_rho()
    sig = tower.sigma.apply
    sig_u = [sig(u) for u in basis_L]
    i10 = [tower.iota10(u) for u in basis_L]
    i01 = [tower.iota01(u) for u in basis_L]
    er6_i10 = [er.c6 * z for z in i10]
    binv = inverse(mat([u.coords() for u in basis_L]))

    def l_coords(z) -> List:
        v = z.coords()
        return [sum((QQ(v[t]) * binv[t][k] for t in range(n_l)), Q0)
                for k in range(n_l)]

    dim = n_l + 1
    table = [[None] * dim for _ in range(dim)]
    zero_row = [Q0] * dim
    for i in range(dim):
        for j in range(dim):
            if i == 0 and j == 0:
                row = list(zero_row)
                row[0] = QQ(er.c1)
                table[i][j] = row
                continue
            if i == 0:
                lpart = er.c3 * basis_L[j - 1]
                table[i][j] = [Q0] + l_coords(lpart)
                continue
            if j == 0:
                lpart = er.c2 * basis_L[i - 1]
                table[i][j] = [Q0] + l_coords(lpart)
                continue
            x = basis_L[i - 1]
            y = basis_L[j - 1]
            comp4 = er.c4 * sig_u[i - 1] * sig_u[j - 1]
            comp5 = er.c5 * x * sig_u[j - 1]
            comp6 = er6_i10[i - 1] * i01[j - 1]
            k_part = comp5.trace_to_Q()
            l_part = comp4 + comp6.rel_trace()
            table[i][j] = [k_part] + l_coords(l_part)
    alg = StructureAlgebra(dim, table)
    if alg.identity_coords != alg._unit(0):
        raise PreconditionError("r_1 = (1,0) is not the identity of the algebra")
    return alg


# -- orders ---------------------------------------------------------------------------


class OrderLattice:
    """Z-lattice in a StructureAlgebra, closed under multiplication."""

    def __init__(self, algebra: StructureAlgebra, rows, check: bool = True):
        self.algebra = algebra
        self.rows = lat.canonical(rows)
        if len(self.rows) != algebra.dim:
            raise NotAnOrder("order lattice must have full rank")
        self._disc: Optional[int] = None
        if check:
            self.int_table()
            if not lat.contains(self.rows, algebra.identity_coords):
                raise NotAnOrder("order does not contain 1")

    def int_table(self) -> List[List[List[int]]]:
        n = self.algebra.dim
        binv = inverse(mat(self.rows))
        tab = []
        for i in range(n):
            row_i = []
            for j in range(n):
                prod = self.algebra.mul_coords(self.rows[i], self.rows[j])
                coords = [sum((QQ(prod[t]) * binv[t][k] for t in range(n)), Q0)
                          for k in range(n)]
                if any(c.denominator != 1 for c in coords):
                    raise NotAnOrder("basis not closed under multiplication")
                row_i.append([int(c) for c in coords])
            tab.append(row_i)
        return tab

    def basis_elems(self) -> List[AlgElem]:
        return [self.algebra.elem(list(r)) for r in self.rows]

    def discriminant(self) -> int:
        """|det(Trd(b_i b_j))|."""
        if self._disc is None:
            n = self.algebra.dim
            deg = self.algebra.degree
            tr_units = [sum((self.algebra._lmats[i][t][t] for t in range(n)), Q0)
                        for i in range(n)]

            def trd(coords):
                return sum((QQ(c) * tr_units[i] for i, c in enumerate(coords)
                            if c != 0), Q0) / deg

            g = [[trd(self.algebra.mul_coords(self.rows[i], self.rows[j]))
                  for j in range(n)] for i in range(n)]
            d = det(g)
            if d.denominator != 1:
                raise NotAnOrder("reduced-trace Gram not integral")
            self._disc = abs(int(d))
        return self._disc


def order_discriminant(o: OrderLattice) -> int:
    return o.discriminant()


def _radical_assoc_modp(int_table, p: int, n: int) -> List[List[int]]:
    """Jacobson radical of the F_p-algebra with the given integer table.

    Friedl-Ronyai chain: I_0 = A, I_{i+1} = {x in I_i : s_{p^i}(L_{xy}) = 0
    for all y in I_i}, where s_k is the k-th characteristic coefficient of
    the regular representation; the last I is the radical.  Over the prime
    field these functionals are linear on each I_i.
    """
    tab = [[[x % p for x in cell] for cell in row] for row in int_table]

    def mulv(x, y):
        out = [0] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        cij = tab[i][j]
                        f = xi * yj
                        for k in range(n):
                            if cij[k]:
                                out[k] = (out[k] + f * cij[k]) % p
        return out

    def lmat_of(x):
        return [mulv(x, [1 if t == j else 0 for t in range(n)]) for j in range(n)]

    # lmat rows j -> coords of x*e_j; charpoly needs the matrix of the linear
    # map, orientation does not matter for characteristic coefficients.
    basis = [[1 if t == j else 0 for t in range(n)] for j in range(n)]
    i = 0
    while True:
        pi = p ** i
        if pi > n:
            break
        dimv = len(basis)
        if dimv == 0:
            break
        tmat = []
        for bx in basis:
            row = []
            for by in basis:
                z = mulv(bx, by)
                cp = modp.charpoly_mod(lmat_of(z), p)
                # coefficient of lambda^(n - p^i), i.e. +- e_{p^i}
                row.append(cp[n - pi] % p)
            tmat.append(row)
        ker = modp.kernel_mod([[tmat[a][b] for a in range(dimv)] for b in range(dimv)], p)
        basis = [[sum(kv[a] * basis[a][t] for a in range(dimv)) % p for t in range(n)]
                 for kv in ker]
        i += 1
    return basis


def _order_coords_to_alg(order: OrderLattice, v) -> List:
    n = order.algebra.dim
    out = [Q0] * n
    for c, row in zip(v, order.rows):
        if c:
            for j in range(n):
                out[j] += QQ(c) * row[j]
    return out


def _enlarge_at(order: OrderLattice, ideal_rows, p: int) -> Optional[OrderLattice]:
    """Left/right order of the lifted ideal; None when nothing grows."""
    alg = order.algebra
    container = [[x / p for x in row] for row in order.rows]
    for side in ("left", "right"):
        if side == "left":
            cond = [alg.right_mult_matrix(w) for w in ideal_rows]
        else:
            cond = [alg.left_mult_matrix(w) for w in ideal_rows]
        cand = lat.sublattice_with_condition(container, cond, ideal_rows)
        if not lat.lat_eq(cand, order.rows):
            bigger = lat.lat_sum(cand, order.rows)
            return OrderLattice(alg, bigger)
    return None


def _p_maximalize_csa(order: OrderLattice, p: int) -> OrderLattice:
    alg = order.algebra
    n = alg.dim
    cur = order
    while True:
        tab = cur.int_table()
        rad = _radical_assoc_modp(tab, p, n)
        if rad:
            gens = [[QQ(p) * x for x in row] for row in cur.rows]
            gens += [_order_coords_to_alg(cur, v) for v in rad]
            ideal_rows = lat.canonical(gens)
            grown = _enlarge_at(cur, ideal_rows, p)
            if grown is not None:
                cur = grown
                continue
        # semisimple (or the radical ideal gave nothing): phase 2 via the
        # maximal two-sided ideals above p
        grown = _phase2_enlarge(cur, p, tab, rad)
        if grown is None:
            return cur
        cur = grown


def _phase2_enlarge(order: OrderLattice, p: int, tab, rad) -> Optional[OrderLattice]:
    """Try the maximal two-sided ideals over p once the radical step stalls.

    Works in the semisimple quotient Q = (O/pO)/rad: splits the center of Q
    into primitive idempotents, lifts the complementary ideals, and enlarges
    by their left/right orders.
    """
    alg = order.algebra
    n = alg.dim

    def mulv(x, y):
        out = [0] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        cij = tab[i][j]
                        f = xi * yj
                        for k in range(n):
                            if cij[k]:
                                out[k] = (out[k] + f * cij[k]) % p
        return out

    rad_rows = [r[:] for r in rad]
    comp = []
    for j in range(n):
        ej = [1 if t == j else 0 for t in range(n)]
        if len(modp.rref_mod(rad_rows + comp + [ej], p)[1]) > len(rad_rows + comp):
            comp.append(ej)
    full = rad_rows + comp
    solve_mat = [[full[i][t] for i in range(len(full))] for t in range(n)]

    def q_coords(x):
        sol = modp.solve_mod(solve_mat, x, p)
        return sol[len(rad_rows):]

    def lift_q(xq):
        return [sum(xq[i] * comp[i][t] for i in range(len(comp))) % p
                for t in range(n)]

    def q_mul(xq, yq):
        return q_coords(mulv(lift_q(xq), lift_q(yq)))

    m = len(comp)
    # center of Q
    cent_rows = []
    for j in range(m):
        ej = [1 if t == j else 0 for t in range(m)]
        row = []
        for k in range(m):
            ek = [1 if t == k else 0 for t in range(m)]
            diff = [(a - b) % p for a, b in zip(q_mul(ej, ek), q_mul(ek, ej))]
            row.extend(diff)
        cent_rows.append(row)
    center = modp.kernel_mod([[cent_rows[j][t] for j in range(m)]
                              for t in range(m * m)], p)
    zc = []
    for v in center:
        if len(modp.rref_mod(zc + [v], p)[1]) > len(zc):
            zc.append(v)
    one_alg = [int(c) % p for c in lat.coords_in(order.rows, alg.identity_coords)]
    one_q = q_coords(one_alg)
    zmat = [[zc[i][t] for i in range(len(zc))] for t in range(m)]

    def z_coords(xq):
        return modp.solve_mod(zmat, xq, p)

    def z_mul(xs, ys):
        xq = [sum(xs[i] * zc[i][t] for i in range(len(zc))) % p for t in range(m)]
        yq = [sum(ys[i] * zc[i][t] for i in range(len(zc))) % p for t in range(m)]
        return z_coords(q_mul(xq, yq))

    from .orders import _split_semisimple
    comps = _split_semisimple(z_mul, z_coords(one_q), p)
    for unit_i, _basis_i in comps:
        ei_q = [sum(unit_i[t] * zc[t][s] for t in range(len(zc))) % p
                for s in range(m)]
        one_minus = [(a - b) % p for a, b in zip(one_q, ei_q)]
        lifted = lift_q(one_minus)
        gens = [[QQ(p) * x for x in row] for row in order.rows]
        gens += [_order_coords_to_alg(order, v) for v in rad_rows]
        for j in range(n):
            ej = [1 if t == j else 0 for t in range(n)]
            gens.append(_order_coords_to_alg(order, mulv(lifted, ej)))
            gens.append(_order_coords_to_alg(order, mulv(ej, lifted)))
        ideal_rows = lat.canonical(gens)
        grown = _enlarge_at(order, ideal_rows, p)
        if grown is not None:
            return grown
    return None


def maximal_order(algebra: StructureAlgebra, start: OrderLattice) -> OrderLattice:
    """Enlarge `start` to a maximal order (p-maximal at every bad prime)."""
    d = start.discriminant()
    if d == 0:
        raise NotAnOrder("degenerate order (discriminant 0)")
    fac = factor_integer(d)
    cur = start
    for p, e in fac.factors:
        if e >= 2:
            cur = _p_maximalize_csa(cur, p)
    return cur


def integral_order_from_algebra(alg: StructureAlgebra) -> OrderLattice:
    """Z-order generated by 1 and suitable integer multiples of the basis."""
    d = lcm_list([x.denominator for row in alg.table for cell in row for x in cell]
                 or [1])
    while True:
        rows = [list(alg.identity_coords)]
        for j in range(alg.dim):
            rows.append([QQ(d) if t == j else Q0 for t in range(alg.dim)])
        try:
            return OrderLattice(alg, rows)
        except NotAnOrder:
            d *= 2
            if d > 1 << 64:
                raise


def good_basis(alpha, tower, ideal_fact, precision_bits: int = 256) -> List:
    """Z-basis of the L-part of c^{-1}, LLL-reduced under the weighted form.

    The form is <z1,z2> = sum over the eight nontrivial torsion points of
    |alpha(T)|^{2/3} z1(T) conj(z2(T)); the K-spot is orthogonal to the
    L-part and contributes nothing here.  Returns eight NFElems.
    """
    L = tower.L
    a = alpha.l
    c_inv = ideal_fact.cube_part_c.inverse()
    rows = c_inv.rows
    n = L.degree

    def compute(prec):
        roots = L.complex_roots(prec)
        with workprec(2 * prec + 64):
            emb = []
            weights = []
            for r, _rad in roots:
                emb.append([_eval_row_at(row, r) for row in rows])
                weights.append(abs(a.embed(r)) ** (mpf(2) / 3))
            g = []
            for i in range(n):
                gi = []
                for j in range(n):
                    s = mpf(0)
                    for k in range(len(roots)):
                        s += weights[k] * (emb[k][i] * emb[k][j].conjugate()).real
                    gi.append(s)
                g.append(gi)
        return g

    gr = _pd_rounded_gram(compute, n, precision_bits)
    scale = lcm_list([x.denominator for row in gr for x in row] or [1])
    gi_int = [[int(x * scale) for x in row] for row in gr]
    u, _ = lll_gram(gi_int)
    out_rows = [[sum(QQ(u[i][t]) * rows[t][j] for t in range(n))
                 for j in range(n)] for i in range(n)]
    return [L.elem(list(r)) for r in out_rows]


def _eval_row_at(row, root):
    from mpmath import mpc
    acc = mpc(0)
    pw = mpc(1)
    for c in row:
        if c != 0:
            acc += q_to_mpf(c) * pw
        pw *= root
    return acc


# -- Gram forms -----------------------------------------------------------------------


def _round_to_dyadic(x, bits: int):
    # ldexp is exact and context-independent; never rewrap through mpf(),
    # which would round the mantissa to the ambient (often 53-bit) context
    if not hasattr(x, "_mpf_"):
        x = mpf(x)
    return QQ(int(ldexp(x, bits)), 1 << bits)


def _check_pd(g) -> None:
    n = len(g)
    for k in range(1, n + 1):
        mk = [row[:k] for row in g[:k]]
        if det(mk) <= 0:
            raise FormNotPositiveDefinite("rounded Gram not positive definite")


def _pd_rounded_gram(compute, n: int, start_prec: int):
    """Round a numerically computed Gram to rationals, keeping it PD.

    `compute(prec)` returns the n x n real Gram at working precision
    `prec`.  Skewed lattices need far more rounding precision than the
    entry sizes suggest (the determinant may be exponentially smaller than
    the entries), so the precision adapts until the exact PD check passes.
    """
    probe = compute(start_prec)
    max_bits = max(1, max(abs(int(x)).bit_length() for row in probe for x in row))
    extra = 64
    last = None
    for _ in range(5):
        bits = n * (max_bits + 2) + extra
        prec = max(start_prec, bits + max_bits + 128)
        g = compute(prec)
        gr = [[_round_to_dyadic(x, bits) for x in row] for row in g]
        gr = [[(gr[i][j] + gr[j][i]) / 2 for j in range(n)] for i in range(n)]
        try:
            _check_pd(gr)
            return gr
        except FormNotPositiveDefinite as ex:
            last = ex
            extra *= 4
    raise last


def gram_intrinsic(order: OrderLattice, rho_data, tower, basis_L,
                   precision_bits: int = 256) -> List[List]:
    """The weighted-embedding form of the good-basis construction.

    <z1,z2> = 3 * sum_T |alpha(T)|^{2/3} z1(T) conj(z2(T)), T running over
    all nine torsion points (the K-spot contributes the k-parts).
    """
    L = tower.L
    a = rho_data.alpha.l
    n = order.algebra.dim

    def compute(prec):
        roots = L.complex_roots(prec)
        with workprec(2 * prec + 64):
            emb = []
            weights = []
            for r, _rad in roots:
                vals = [u.embed(r) for u in basis_L]
                emb.append(vals)
                weights.append(abs(a.embed(r)) ** (mpf(2) / 3))
            rows_val = []
            for row in order.rows:
                per_root = []
                for vals in emb:
                    acc = mp.mpc(0)
                    for c, bv in zip(row[1:], vals):
                        if c != 0:
                            acc += q_to_mpf(c) * bv
                    per_root.append(acc)
                rows_val.append((q_to_mpf(row[0]), per_root))
            g = []
            for i in range(n):
                gi = []
                ki, vi = rows_val[i]
                for j in range(n):
                    kj, vj = rows_val[j]
                    s = ki * kj
                    for w, x, y in zip(weights, vi, vj):
                        s += w * (x * y.conjugate()).real
                    gi.append(3 * s)
                g.append(gi)
        return g

    return _pd_rounded_gram(compute, n, precision_bits)


def gram_real_split(order: OrderLattice, precision_bits: int = 256,
                    seed: int = 0) -> List[List]:
    """Frobenius form pulled back through a numeric real trivialisation.

    Searches small elements whose cubic minimal polynomial has three
    distinct real roots, builds the rank-1 Lagrange idempotent numerically,
    and represents the algebra on the column space.
    """
    alg = order.algebra
    n = alg.dim
    deg = alg.degree
    rng = random.Random(seed)
    cands = []
    cands.extend(order.rows)
    rows = order.rows
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            cands.append([a + b for a, b in zip(rows[i], rows[j])])
    for _ in range(300):
        coef = [rng.randrange(-2, 3) for _ in range(n)]
        cands.append([sum(QQ(coef[t]) * rows[t][j] for t in range(n))
                      for j in range(n)])
    for x in cands:
        mp_x = alg.elem(x).min_poly()
        if mp_x.degree != deg:
            continue
        disc = mp_x.disc()
        if disc <= 0 or not mp_x.is_squarefree():
            continue
        return _frobenius_gram(order, x, mp_x, precision_bits)
    raise NoRealSplitFound("no element with totally-real split minimal polynomial")


def _frobenius_gram(order: OrderLattice, x, mp_x: QPoly, precision_bits: int):
    alg = order.algebra
    n = alg.dim
    deg = alg.degree

    def compute(prec):
        with workprec(2 * prec + 64):
            from mpmath import polyroots
            roots = polyroots([q_to_mpf(c) for c in reversed(mp_x.c)],
                              maxsteps=200, extraprec=prec)
            roots = sorted([r.real for r in roots])
            lam = roots[0]
            # e1 = prod_{j>0} (x - lam_j) / (lam_1 - lam_j), numerically
            xx = [q_to_mpf(c) for c in x]
            e1 = None
            idm = [q_to_mpf(c) for c in alg.identity_coords]
            for lj in roots[1:]:
                term = [a - lj * b for a, b in zip(xx, idm)]
                e1 = term if e1 is None else _num_mul(alg, e1, term)
                e1 = [v / (lam - lj) for v in e1]
            # module A*e1: rows of the right-multiplication image
            img = []
            for t in range(n):
                et = [mpf(1) if s == t else mpf(0) for s in range(n)]
                img.append(_num_mul(alg, et, e1))
            basis_idx, basis_rows = _num_row_basis(img, deg)
            # matrices of left multiplication by the order basis
            mats = []
            for row in order.rows:
                xr = [q_to_mpf(c) for c in row]
                cols = []
                for w in basis_rows:
                    image = _num_mul(alg, xr, w)
                    cols.append(_num_solve(basis_rows, image, basis_idx))
                mats.append(cols)  # cols[j][m]: coeff of basis m in image of j
            g = []
            for i in range(n):
                gi = []
                for j in range(n):
                    s = mpf(0)
                    for a in range(deg):
                        for b in range(deg):
                            s += mats[i][a][b] * mats[j][a][b]
                    gi.append(s)
                g.append(gi)
        return g

    return _pd_rounded_gram(compute, n, precision_bits)


def _num_mul(alg: StructureAlgebra, x, y):
    n = alg.dim
    out = [mpf(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        ti = alg.table[i]
        for j in range(n):
            if y[j] == 0:
                continue
            f = x[i] * y[j]
            cij = ti[j]
            for k in range(n):
                if cij[k] != 0:
                    out[k] += f * q_to_mpf(cij[k])
    return out


def _num_row_basis(rows, want: int):
    """Pick `want` numerically independent rows (modified Gram-Schmidt)."""
    picked = []
    picked_rows = []
    ortho = []
    for idx, row in enumerate(rows):
        v = list(row)
        for o in ortho:
            d = sum(a * b for a, b in zip(v, o))
            v = [a - d * b for a, b in zip(v, o)]
        nv = sum(a * a for a in v) ** mpf(0.5)
        if nv > ldexp(mpf(1), -30):
            ortho.append([a / nv for a in v])
            picked.append(idx)
            picked_rows.append(list(row))
            if len(picked) == want:
                return picked, picked_rows
    raise NoRealSplitFound("numeric module basis collapsed")


def _num_solve(basis_rows, vec, basis_idx):
    """Least-squares coords of vec in span(basis_rows) via normal equations."""
    k = len(basis_rows)
    g = [[sum(a * b for a, b in zip(basis_rows[i], basis_rows[j]))
          for j in range(k)] for i in range(k)]
    rhs = [sum(a * b for a, b in zip(basis_rows[i], vec)) for i in range(k)]
    # Gaussian elimination on the small positive-definite system
    aug = [g[i] + [rhs[i]] for i in range(k)]
    for c in range(k):
        piv = max(range(c, k), key=lambda r: abs(aug[r][c]))
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(k):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    return [aug[i][k] for i in range(k)]


# -- zero divisors and trivialisation ---------------------------------------------------


def lll_reduce_order(order: OrderLattice, gram) -> OrderLattice:
    scale = lcm_list([g.denominator for row in gram for g in row] or [1])
    gi = [[int(g * scale) for g in row] for row in gram]
    u, _ = lll_gram(gi)
    n = order.algebra.dim
    rows = [[sum(QQ(u[i][t]) * order.rows[t][j] for t in range(n))
             for j in range(n)] for i in range(n)]
    o2 = OrderLattice(order.algebra, rows, check=False)
    o2.rows = rows  # keep LLL order (canonical() would re-sort the basis)
    return o2


def find_zero_divisor(order: OrderLattice, gram, seed: int = 0,
                      budget: int = 10 ** 4) -> AlgElem:
    """Element of the order with reducible minimal polynomial.

    Search order: LLL-reduced basis vectors, then +-2-term sums, then seeded
    3-term combinations with small coefficients.
    """
    alg = order.algebra
    reduced = lll_reduce_order(order, gram)
    rows = reduced.rows
    n = alg.dim

    def candidates():
        for r in rows:
            yield r
        for i in range(n):
            for j in range(i + 1, n):
                yield [a + b for a, b in zip(rows[i], rows[j])]
                yield [a - b for a, b in zip(rows[i], rows[j])]
        rng = random.Random(seed)
        while True:
            picks = rng.sample(range(n), 3)
            coefs = [rng.randrange(-2, 3) for _ in range(3)]
            yield [sum(QQ(coefs[t]) * rows[picks[t]][j] for t in range(3))
                   for j in range(n)]

    tried = 0
    for cand in candidates():
        tried += 1
        if tried > budget:
            break
        x = alg.elem(cand)
        if all(c == 0 for c in cand):
            continue
        mp_x = x.min_poly()
        if mp_x.degree <= 0:
            continue
        if _is_reducible(mp_x):
            if _zero_divisor_from(x) is not None:
                return x
    raise NoZeroDivisorFound(f"no zero divisor within budget {budget}")


def _is_reducible(p: QPoly) -> bool:
    from .numfield import factor_poly_q
    if p.degree <= 1:
        return False
    fac = factor_poly_q(p)
    return len(fac) > 1 or fac[0][1] > 1 or fac[0][0].degree < p.degree


def _zero_divisor_from(x: AlgElem) -> Optional[Tuple[AlgElem, int]]:
    """(y, rank) with y = h(x) of rank coprime to n, from a factor h."""
    from .numfield import factor_poly_q
    alg = x.parent
    n = alg.degree
    mp_x = x.min_poly()
    fac = factor_poly_q(mp_x)
    pieces = []
    for h, e in fac:
        for ee in range(1, e + 1):
            pieces.append(h ** ee)
    seen = set()
    for h in pieces:
        if h.degree >= mp_x.degree:
            continue
        key = tuple(h.c)
        if key in seen:
            continue
        seen.add(key)
        y_coords = _eval_poly_alg(h, x)
        y = alg.elem(y_coords)
        if all(c == 0 for c in y.coords):
            continue
        lm = alg.left_mult_matrix(y.coords)
        r = rank(mat(lm))
        if r % n == 0:
            rk = r // n
            if 0 < rk < n and _gcd(rk, n) == 1:
                return y, rk
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _eval_poly_alg(p: QPoly, x: AlgElem) -> List:
    alg = x.parent
    acc = [Q0] * alg.dim
    for c in reversed(p.c):
        acc = alg.mul_coords(acc, x.coords)
        acc = [a + QQ(c) * e for a, e in zip(acc, alg.identity_coords)]
    return acc


@dataclass
class TrivializationResult:
    split: bool
    matrices: Optional[List[List[List]]] = None  # 9 matrices, 3x3 rows of mpq
    max_order_disc: Optional[IntFactorization] = None
    max_order: Optional[OrderLattice] = None

    def verify_structure(self, alg: StructureAlgebra) -> bool:
        """Check M_i M_j = sum_k c_ijk M_k exactly, plus span and identity."""
        if not self.split:
            return False
        n = alg.degree
        ms = self.matrices
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = mat_mul(mat(ms[i]), mat(ms[j]))
                acc = [[Q0] * n for _ in range(n)]
                cij = alg.table[i][j]
                for k in range(alg.dim):
                    if cij[k] != 0:
                        for r in range(n):
                            for s in range(n):
                                acc[r][s] += cij[k] * ms[k][r][s]
                if prod != acc:
                    return False
        flat = [[m[r][s] for r in range(n) for s in range(n)] for m in ms]
        if rank(mat(flat)) != alg.dim:
            return False
        ident = [[Q0] * n for _ in range(n)]
        for i, c in enumerate(alg.identity_coords):
            if c != 0:
                for r in range(n):
                    for s in range(n):
                        ident[r][s] += c * ms[i][r][s]
        return all(ident[r][s] == (Q1 if r == s else Q0)
                   for r in range(n) for s in range(n))


def module_matrices(alg: StructureAlgebra, y: AlgElem, rk: int) -> List[List[List]]:
    """Matrices of the basis acting on the simple left module built from y."""
    n = alg.degree
    rm = [alg.mul_coords(alg._unit(t), y.coords) for t in range(alg.dim)]
    if rk == 1:
        basis = rref(rm)[0][:n]
        basis = [row for row in rref(rm)[0] if any(c != 0 for c in row)]
    else:
        # rank 2: the left annihilator {z : z y = 0} is the simple module
        basis = right_kernel([list(col) for col in zip(*rm)])
    if len(basis) != n:
        raise PreconditionError("module dimension != n (wrong rank input)")
    bt = [list(col) for col in zip(*mat(basis))]
    mats = []
    for i in range(alg.dim):
        cols = []
        for w in basis:
            img = alg.mul_coords(alg._unit(i), w)
            sol = solve(bt, img)
            if sol is None:
                raise PreconditionError("module not stable under the algebra")
            cols.append(sol)
        mats.append([[cols[j][m] for j in range(n)] for m in range(n)])
    return mats


def trivialize(alg: StructureAlgebra, seed: int = 0, precision_bits: int = 256,
               intrinsic_gram: Optional[List[List]] = None,
               start_order: Optional[OrderLattice] = None) -> TrivializationResult:
    """Full split-or-certify pipeline for a degree-3 structure algebra."""
    start = start_order if start_order is not None \
        else integral_order_from_algebra(alg)
    omax = maximal_order(alg, start)
    d = omax.discriminant()
    if d != 1:
        return TrivializationResult(False, max_order_disc=factor_integer(d),
                                    max_order=omax)
    gram = intrinsic_gram if intrinsic_gram is not None \
        else gram_real_split(omax, precision_bits, seed)
    x = find_zero_divisor(omax, gram, seed=seed)
    y, rk = _zero_divisor_from(x)
    mats = module_matrices(alg, y, rk)
    result = TrivializationResult(True, matrices=mats, max_order=omax)
    if not result.verify_structure(alg):
        raise PreconditionError("trivialisation verification failed")
    return result
