"""Orders, maximal orders, prime ideals and ideal factorization in number fields.

All lattices live in power-basis coordinates of the field.  ring_of_integers
is the Pohst-Zassenhaus round-2 loop: radical of O/pO via the iterated
Frobenius kernel, then the ring of multipliers, until stable at each prime
whose square divides the discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import lattices as lat
from . import modp
from .errors import NotAnOrder, PreconditionError
from .factorint import factor_integer
from .numfield import NFElem, NumberField
from .qmat import det, mat
from .qpoly import QPoly
from .rat import QQ, Q0, Q1, lcm_list


def _mult_power_coords(L: NumberField):
    f = L.poly

    def mult(x, y):
        p = (QPoly(list(x)) * QPoly(list(y))) % f
        return [p[i] for i in range(L.degree)]

    return mult


def _right_mult_matrix(L: NumberField, w) -> List[List]:
    """Rows t -> coords of (X^t * w mod f); x @ M = coords of x*w."""
    f = L.poly
    n = L.degree
    rows = []
    cur = QPoly(list(w))
    for _t in range(n):
        rows.append([cur[i] for i in range(n)])
        cur = (cur * QPoly.x(1)) % f
    return rows


class NFOrder:
    """An order in L given by a basis (rows, power-basis coordinates)."""

    def __init__(self, field: NumberField, rows, check: bool = True):
        self.field = field
        self.rows = lat.canonical(rows)
        if len(self.rows) != field.degree:
            raise NotAnOrder("basis does not have full rank")
        self._table: Optional[List[List[List]]] = None
        if check:
            self.mult_table()
            one = [Q1] + [Q0] * (field.degree - 1)
            if not lat.contains(self.rows, one):
                raise NotAnOrder("order does not contain 1")

    def elem(self, coords_in_order_basis) -> NFElem:
        n = self.field.degree
        v = [Q0] * n
        for c, row in zip(coords_in_order_basis, self.rows):
            if c != 0:
                for j in range(n):
                    v[j] += QQ(c) * row[j]
        return self.field.elem(v)

    def basis_elems(self) -> List[NFElem]:
        return [self.field.elem(list(r)) for r in self.rows]

    def mult_table(self) -> List[List[List]]:
        """T[i][j] = coords of b_i b_j in the order basis; must be integral."""
        if self._table is None:
            n = self.field.degree
            mult = _mult_power_coords(self.field)
            tab = []
            from .qmat import inverse
            binv = inverse(mat(self.rows))
            for i in range(n):
                rowi = []
                for j in range(n):
                    prod = mult(self.rows[i], self.rows[j])
                    coords = [sum((QQ(prod[t]) * binv[t][k] for t in range(n)), Q0)
                              for k in range(n)]
                    if any(c.denominator != 1 for c in coords):
                        raise NotAnOrder("basis not closed under multiplication")
                    rowi.append([int(c) for c in coords])
                tab.append(rowi)
            self._table = tab
        return self._table

    def disc(self):
        """Signed discriminant det(Tr(b_i b_j))."""
        n = self.field.degree
        els = self.basis_elems()
        g = [[(els[i] * els[j]).trace_to_Q() for j in range(n)] for i in range(n)]
        d = det(g)
        assert d.denominator == 1
        return int(d)

    def contains(self, z: NFElem) -> bool:
        return lat.contains(self.rows, z.coords())

    def is_p_integral(self, z: NFElem, p: int) -> bool:
        cs = lat.coords_in(self.rows, z.coords())
        return all(c.denominator % p != 0 for c in cs)


def _frobenius_kernel(table: List[List[List]], p: int, n: int) -> List[List[int]]:
    """Radical of the commutative F_p-algebra with the given mult table."""

    def mul(x, y):
        out = [0] * n
        for i, xi in enumerate(x):
            if xi:
                ti = table[i]
                for j, yj in enumerate(y):
                    if yj:
                        tij = ti[j]
                        for k in range(n):
                            out[k] = (out[k] + xi * yj * tij[k]) % p
        return out

    def elem_pow(x, e):
        out = None
        base = x[:]
        while e:
            if e & 1:
                out = base[:] if out is None else mul(out, base)
            base = mul(base, base)
            e >>= 1
        return out if out is not None else x

    frob_cols = []
    for j in range(n):
        ej = [0] * n
        ej[j] = 1
        frob_cols.append(elem_pow(ej, p))
    frob = [[frob_cols[j][i] for j in range(n)] for i in range(n)]
    e = 1
    while p ** e < n:
        e += 1
    fe = modp.mat_pow_mod(frob, e, p)
    return modp.kernel_mod(fe, p)


def _p_maximalize(order: NFOrder, p: int) -> NFOrder:
    L = order.field
    n = L.degree
    mult = _mult_power_coords(L)
    cur = order
    while True:
        table = cur.mult_table()
        ker = _frobenius_kernel(table, p, n)
        # lift radical to a lattice pO <= I <= O, power-basis coordinates
        gens = [[QQ(p) * x for x in row] for row in cur.rows]
        for v in ker:
            w = [Q0] * n
            for c, row in zip(v, cur.rows):
                if c:
                    for j in range(n):
                        w[j] += c * row[j]
            gens.append(w)
        i_rows = lat.canonical(gens)
        cond = [_right_mult_matrix(L, w) for w in i_rows]
        container = [[x / p for x in row] for row in cur.rows]
        new_rows = lat.sublattice_with_condition(container, cond, i_rows)
        if lat.lat_eq(new_rows, cur.rows):
            return cur
        cur = NFOrder(L, new_rows)


def ring_of_integers(field: NumberField) -> NFOrder:
    """Maximal order of the field (round 2).

    The defining polynomial must be monic; a non-integral one is rescaled
    internally (theta -> c*theta) and the result mapped back.
    """
    f = field.poly
    if not f.is_integral():
        c = lcm_list([a.denominator for a in f.c])
        scaled = QPoly([f[i] * QQ(c) ** (f.degree - i) for i in range(f.degree + 1)])
        field2 = NumberField(scaled, check_irreducible=False)
        o2 = ring_of_integers(field2)
        # theta' = c*theta, so theta'^j contributes c^j in theta-coordinates
        rows = [[x * QQ(c) ** j for j, x in enumerate(row)] for row in o2.rows]
        return NFOrder(field, rows)
    d = f.disc()
    fac = factor_integer(int(d))
    order = NFOrder(field, [[Q1 if i == j else Q0 for j in range(field.degree)]
                            for i in range(field.degree)])
    for p, e in fac.factors:
        if e >= 2:
            order = _p_maximalize(order, p)
    return order


# -- fractional ideals ---------------------------------------------------------------


class NFIdeal:
    """Fractional ideal of a (maximal) order, as a lattice in power coords."""

    def __init__(self, order: NFOrder, rows):
        self.order = order
        self.rows = lat.canonical(rows)
        if len(self.rows) != order.field.degree:
            raise PreconditionError("ideal lattice must have full rank")

    @staticmethod
    def principal(order: NFOrder, z: NFElem) -> "NFIdeal":
        mult = _mult_power_coords(order.field)
        zc = z.coords()
        return NFIdeal(order, [mult(zc, row) for row in order.rows])

    @staticmethod
    def unit(order: NFOrder) -> "NFIdeal":
        return NFIdeal(order, order.rows)

    def __eq__(self, other):
        return isinstance(other, NFIdeal) and self.rows == other.rows

    def __mul__(self, other: "NFIdeal") -> "NFIdeal":
        mult = _mult_power_coords(self.order.field)
        return NFIdeal(self.order, lat.lat_product(self.rows, other.rows, mult))

    def __pow__(self, e: int) -> "NFIdeal":
        if e < 0:
            return self.inverse() ** (-e)
        out = NFIdeal.unit(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, s) -> "NFIdeal":
        return NFIdeal(self.order, lat.lat_scale(self.rows, s))

    def inverse(self) -> "NFIdeal":
        # clear denominators, invert the integral part, rescale
        d = lcm_list([x.denominator for row in self.rows for x in row])
        integral = NFIdeal(self.order, lat.lat_scale(self.rows, d))
        nrm = integral.norm()
        container = [[x / nrm for x in row] for row in self.order.rows]
        cond = [_right_mult_matrix(self.order.field, w) for w in integral.rows]
        inv_rows = lat.sublattice_with_condition(container, cond, self.order.rows)
        return NFIdeal(self.order, lat.lat_scale(inv_rows, d))

    def norm(self):
        """[O : I] as a positive rational (integral => positive integer)."""
        return abs(lat.lat_det(self.rows) / lat.lat_det(self.order.rows))

    def is_integral(self) -> bool:
        return all(lat.contains(self.order.rows, row) for row in self.rows)

    def contains(self, z: NFElem) -> bool:
        return lat.contains(self.rows, z.coords())

    def basis_elems(self) -> List[NFElem]:
        return [self.order.field.elem(list(r)) for r in self.rows]


class PrimeIdeal(NFIdeal):
    def __init__(self, order: NFOrder, p: int, rows, res_degree: int):
        super().__init__(order, rows)
        self.p = p
        self.res_degree = res_degree
        self._anti: Optional[NFElem] = None
        self._ram: Optional[int] = None
        self._two_elt: Optional[Tuple[int, NFElem]] = None

    def norm_int(self) -> int:
        return self.p ** self.res_degree

    def anti_uniformizer(self) -> NFElem:
        """a with v_P(a) = -1 and v_P'(a) >= 0 at the other primes over p."""
        if self._anti is None:
            O = self.order
            p = self.p
            target = lat.lat_scale(O.rows, p)
            cond = [_right_mult_matrix(O.field, w) for w in self.rows]
            q_rows = lat.sublattice_with_condition(O.rows, cond, target)
            cand = None
            for y in q_rows:
                a = O.field.elem([x / p for x in y])
                if not O.is_p_integral(a, p):
                    cand = a
                    break
            if cand is None:
                raise PreconditionError("prime ideal not invertible (order not maximal?)")
            self._anti = cand
        return self._anti

    def ramification(self) -> int:
        if self._ram is None:
            self._ram = self.valuation(self.order.field.from_rational(self.p))
        return self._ram

    def valuation(self, z: NFElem) -> int:
        """v_P(z) for nonzero z, fractional allowed."""
        if z.is_zero():
            raise PreconditionError("valuation of zero")
        den = lcm_list([c.denominator for c in z.coords()])
        k = 0
        while den % self.p == 0:
            den //= self.p
            k += 1
        zz = z * (self.p ** k if k else 1)
        a = self.anti_uniformizer()
        v = 0
        cur = zz * a
        while self.order.is_p_integral(cur, self.p):
            v += 1
            cur = cur * a
        if k:
            v -= k * self.ramification()
        return v

    def two_element(self) -> Tuple[int, NFElem]:
        """(p, alpha) with P = pO + alpha O."""
        if self._two_elt is None:
            O = self.order
            mult = _mult_power_coords(O.field)
            p_rows = lat.lat_scale(O.rows, self.p)

            def ok(alpha: NFElem) -> bool:
                rows = p_rows + [mult(alpha.coords(), r) for r in O.rows]
                return lat.lat_eq(rows, self.rows)

            import random
            rng = random.Random(self.p * 7919 + self.res_degree)
            basis = self.basis_elems()

            def candidates():
                for b in basis:
                    yield b
                for i in range(len(basis)):
                    for j in range(i + 1, len(basis)):
                        yield basis[i] + basis[j]
                        yield basis[i] - basis[j]
                for _ in range(300):
                    coeffs = [rng.randrange(-2, 3) for _ in basis]
                    z = self.order.field.zero()
                    for c, b in zip(coeffs, basis):
                        if c:
                            z = z + b * c
                    yield z

            for alpha in candidates():
                if not alpha.is_zero() and self.contains(alpha) and ok(alpha):
                    self._two_elt = (self.p, alpha)
                    break
            else:
                raise PreconditionError("no two-element representation found")
        return self._two_elt


def prime_decomposition(field: NumberField, p: int,
                        order: Optional[NFOrder] = None) -> List[PrimeIdeal]:
    """Primes over p with (ideal, e, f); sum e_i f_i = degree is asserted."""
    O = order if order is not None else ring_of_integers(field)
    n = field.degree
    f = field.poly
    disc_f = int(f.disc())
    index_sq = QQ(disc_f, O.disc())
    assert index_sq.denominator == 1
    p_divides_index = int(index_sq) % p == 0
    mult = _mult_power_coords(field)
    out: List[PrimeIdeal] = []
    if not p_divides_index and f.is_integral():
        fac = modp.factor_poly_mod([int(c) % p for c in [f[i] for i in range(n + 1)]], p)
        for g, e in fac:
            gen = field.elem([QQ(c) for c in g])
            rows = lat.lat_scale(O.rows, p) + [mult(gen.coords(), r) for r in O.rows]
            P = PrimeIdeal(O, p, rows, len(g) - 1)
            P._ram = e
            out.append(P)
    else:
        out = _prime_decomposition_general(field, p, O)
    assert sum(P.ramification() * P.res_degree for P in out) == n
    return out


def _prime_decomposition_general(field: NumberField, p: int, O: NFOrder) -> List[PrimeIdeal]:
    """Idempotent splitting of O/pO (works whether or not p divides the index)."""
    n = field.degree
    table = O.mult_table()
    rad = _frobenius_kernel(table, p, n)  # radical, coords in O-basis

    def mulv(x, y):
        out = [0] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        tij = table[i][j]
                        for k in range(n):
                            out[k] = (out[k] + xi * yj * tij[k]) % p
        return out

    # complement basis of the radical inside O/pO
    rows = [r[:] for r in rad]
    comp = []
    for j in range(n):
        ej = [1 if t == j else 0 for t in range(n)]
        r, piv = modp.rref_mod(rows + [ej], p)
        if len(piv) > len(modp.rref_mod(rows, p)[1]):
            rows.append(ej)
            comp.append(ej)
    # split the semisimple quotient S = span(comp) mod rad
    full = rad + comp

    def s_coords(x):
        sol = modp.solve_mod([[full[i][t] for i in range(len(full))] for t in range(n)], x, p)
        return sol[len(rad):]

    def s_mul(xs, ys):
        x = [sum(xs[i] * comp[i][t] for i in range(len(comp))) % p for t in range(n)]
        y = [sum(ys[i] * comp[i][t] for i in range(len(comp))) % p for t in range(n)]
        return s_coords(mulv(x, y))

    one_s = s_coords([int(c) % p for c in lat.coords_in(O.rows, [Q1] + [Q0] * (n - 1))])

    comps = _split_semisimple(s_mul, one_s, p)
    out = []
    for unit_i, basis_i in comps:
        others = []
        for unit_j, basis_j in comps:
            if unit_j is not unit_i:
                others.extend(basis_j)
        gens = [[QQ(p) * x for x in row] for row in O.rows]
        for v in rad + [_lift(comp, w, p) for w in others]:
            gens.append(_order_coords_to_power(O, v))
        P = PrimeIdeal(O, p, gens, len(basis_i))
        out.append(P)
    return out


def _lift(comp, s_vec, p):
    n = len(comp[0])
    return [sum(s_vec[i] * comp[i][t] for i in range(len(comp))) % p
            for t in range(n)]


def _order_coords_to_power(O: NFOrder, v):
    n = O.field.degree
    out = [Q0] * n
    for c, row in zip(v, O.rows):
        if c:
            for j in range(n):
                out[j] += QQ(c) * row[j]
    return out


def _split_semisimple(s_mul, one, p: int):
    """Split a commutative semisimple F_p-algebra into fields.

    Returns list of (unit, basis) pairs, everything in S-coordinates.
    `s_mul` multiplies S-coordinate vectors.
    """
    m = len(one)

    def sub_split(unit, basis):
        dim = len(basis)
        if dim == 1:
            return [(unit, basis)]
        tries = []
        tries.extend(basis)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                tries.append([(x + 2 * y) % p for x, y in zip(basis[i], basis[j])])
        import random
        rng = random.Random(1234 + dim)
        for _ in range(64):
            tries.append([rng.randrange(p) for _ in range(m)])
        for z in tries:
            # project z into the component: z := z * unit
            z = s_mul(z, unit)
            mp_coeffs = _minpoly_in_sub(z, unit, s_mul, p)
            fac = modp.factor_poly_mod(mp_coeffs, p)
            if len(fac) == 1 and fac[0][1] == 1:
                if len(fac[0][0]) - 1 == dim:
                    return [(unit, basis)]
                continue
            if any(e > 1 for _g, e in fac):
                continue  # cannot happen in a semisimple algebra; skip
            pieces = []
            mfull = mp_coeffs
            for g, _e in fac:
                h, _r = modp.pdivmod(mfull, g, p)
                gpoly, s, _t = modp.pxgcd(h, g, p)
                assert gpoly == [1]
                # idempotent e_g = (s*h)(z)
                sh = modp.pmul(s, h, p)
                e_g = _eval_poly_elem(sh, z, unit, s_mul, p)
                new_basis = _image_basis(e_g, basis, s_mul, p)
                pieces.extend(sub_split(e_g, new_basis))
            return pieces
        raise PreconditionError("failed to split semisimple algebra")

    full_basis = [[1 if t == j else 0 for t in range(m)] for j in range(m)]
    return sub_split(one, full_basis)


def _minpoly_in_sub(z, unit, s_mul, p):
    vecs = [unit]
    cur = unit
    while True:
        cur = s_mul(cur, z)
        a = [[vecs[i][t] for i in range(len(vecs))] for t in range(len(z))]
        sol = modp.solve_mod(a, cur, p)
        if sol is not None:
            return [(-x) % p for x in sol] + [1]
        vecs.append(cur)


def _eval_poly_elem(coeffs, z, unit, s_mul, p):
    acc = [0] * len(unit)
    for c in reversed(coeffs):
        acc = s_mul(acc, z)
        acc = [(a + c * u) % p for a, u in zip(acc, unit)]
    return acc


def _image_basis(e, basis, s_mul, p):
    imgs = [s_mul(e, b) for b in basis]
    out = []
    seen = []
    for v in imgs:
        r, piv = modp.rref_mod(seen + [v], p)
        if len(piv) > len(seen):
            seen.append(v)
            out.append(v)
    return out


# -- factorization of principal ideals --------------------------------------------------


@dataclass
class FracIdealFactorization:
    element: NFElem
    factors: List[Tuple[PrimeIdeal, int]]
    cube_free_part_b: NFIdeal
    cube_part_c: NFIdeal
    n: int

    def b_norm(self):
        return self.cube_free_part_b.norm()


def factor_principal_ideal(a: NFElem, n: int, order: Optional[NFOrder] = None,
                           decomp_cache: Optional[Dict[int, List[PrimeIdeal]]] = None
                           ) -> FracIdealFactorization:
    """(a) = b * c^n with b integral and n-th-power free.

    Verifies the factorization by rebuilding the principal ideal from the
    prime powers.
    """
    if a.is_zero():
        raise PreconditionError("element must be nonzero")
    field = a.parent
    O = order if order is not None else ring_of_integers(field)
    nrm = QQ(a.norm_to_Q())
    support = set()
    for v in (abs(nrm.numerator), abs(nrm.denominator)):
        if v != 1:
            for q, _e in factor_integer(int(v)).factors:
                support.add(q)
    factors: List[Tuple[PrimeIdeal, int]] = []
    for q in sorted(support):
        if decomp_cache is not None and q in decomp_cache:
            primes = decomp_cache[q]
        else:
            primes = prime_decomposition(field, q, O)
            if decomp_cache is not None:
                decomp_cache[q] = primes
        for P in primes:
            v = P.valuation(a)
            if v != 0:
                factors.append((P, v))
    b = NFIdeal.unit(O)
    c = NFIdeal.unit(O)
    for P, v in factors:
        r = v % n
        qq = (v - r) // n
        if r:
            b = b * P ** r
        if qq:
            c = c * P ** qq
    # verification: product of prime powers reproduces (a)
    prod = NFIdeal.unit(O)
    for P, v in factors:
        prod = prod * P ** v
    assert prod == NFIdeal.principal(O, a), "ideal factorization verification failed"
    return FracIdealFactorization(a, factors, b, c, n)
