"""The etale algebra R = K x L, its tensor square, and the alpha -> rho step.

R tensor R is carried in the six-component model fixed by the orbit
representatives (O,O), (T,O), (O,T), (-T,-T), (T,-T), (T10,T01); component
order in TensorElem is exactly that list, which is what makes the worked
fixtures byte-comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import DivisionByZeroElem, PreconditionError
from .intmat import count_solutions_mod
from .numfield import NFElem, nth_root
from .rat import QQ, Q1
from .relext import MElem
from .tower import Label, TorsionTower


class EtaleElem:
    """Element of R = Q x L."""

    __slots__ = ("k", "l")

    def __init__(self, k, l: NFElem):
        self.k = QQ(k)
        self.l = l

    def __eq__(self, other):
        return self.k == other.k and self.l == other.l

    def __repr__(self):
        return f"EtaleElem({self.k}, {self.l.poly!r})"

    def __mul__(self, other: "EtaleElem") -> "EtaleElem":
        return EtaleElem(self.k * other.k, self.l * other.l)

    def __truediv__(self, other: "EtaleElem") -> "EtaleElem":
        if other.k == 0 or other.l.is_zero():
            raise DivisionByZeroElem("division by a non-unit of R")
        return EtaleElem(self.k / other.k, self.l / other.l)

    def __pow__(self, n: int) -> "EtaleElem":
        return EtaleElem(self.k ** n, self.l ** n)

    def is_unit(self) -> bool:
        return self.k != 0 and not self.l.is_zero()

    def coords(self) -> List:
        return [self.k] + self.l.coords()


@dataclass
class TensorElem:
    """Element of R tensor R in the six-component model."""

    c1: object        # Q
    c2: NFElem        # at (T, O)
    c3: NFElem        # at (O, T)
    c4: NFElem        # at (-T, -T)
    c5: NFElem        # at (T, -T)
    c6: MElem         # at (T10, T01)

    def components(self):
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6)

    def __eq__(self, other):
        return all(a == b for a, b in zip(self.components(), other.components()))

    def __mul__(self, other: "TensorElem") -> "TensorElem":
        return TensorElem(self.c1 * other.c1, self.c2 * other.c2,
                          self.c3 * other.c3, self.c4 * other.c4,
                          self.c5 * other.c5, self.c6 * other.c6)

    def __truediv__(self, other: "TensorElem") -> "TensorElem":
        if other.c1 == 0 or any(c.is_zero() for c in other.components()[1:]):
            raise DivisionByZeroElem("division by a non-unit of R tensor R")
        return TensorElem(QQ(self.c1) / other.c1, self.c2 / other.c2,
                          self.c3 / other.c3, self.c4 / other.c4,
                          self.c5 / other.c5, self.c6 / other.c6)

    def __pow__(self, n: int) -> "TensorElem":
        return TensorElem(QQ(self.c1) ** n, self.c2 ** n, self.c3 ** n,
                          self.c4 ** n, self.c5 ** n, self.c6 ** n)


def tensor_embed(r: EtaleElem, s: EtaleElem, tower: TorsionTower) -> TensorElem:
    sig = tower.sigma.apply
    return TensorElem(
        r.k * s.k,
        r.l * s.k,
        s.l * r.k,
        sig(r.l) * sig(s.l),
        r.l * sig(s.l),
        tower.iota10(r.l) * tower.iota01(s.l),
    )


def delta(r: EtaleElem, tower: TorsionTower) -> TensorElem:
    one_l = tower.L.from_rational
    return TensorElem(r.k, r.l, r.l, r.l, one_l(r.k), tower.M.from_base(r.l))


def trace_RR(t: TensorElem, tower: TorsionTower) -> EtaleElem:
    k_part = QQ(t.c1) + t.c5.trace_to_Q()
    l_part = t.c2 + t.c3 + t.c4 + t.c6.rel_trace()
    return EtaleElem(k_part, l_part)


def partial_map(r: EtaleElem, tower: TorsionTower) -> TensorElem:
    if not r.is_unit():
        raise DivisionByZeroElem("partial of a non-unit")
    return tensor_embed(r, r, tower) / delta(r, tower)


@dataclass
class RhoData:
    alpha: EtaleElem
    rho: TensorElem
    epsilon: TensorElem
    cube_root_u: NFElem   # s: the sigma-invariant cube root of a sigma(a)
    cube_root_v: MElem    # t/s: the tau-invariant cube root of i10(a)i01(a)/a
    zeta3: MElem
    weil_sign: int

    def eps_rho(self) -> TensorElem:
        return self.epsilon * self.rho


def build_rho(alpha: EtaleElem, tower: TorsionTower, weil_sign: int = 1) -> RhoData:
    """rho = (1,1,1,sigma(a)/s, s, t/s) from cube roots in L+ and M+.

    Verifies partial(alpha) = rho^3 and the product condition; both are
    exact identities, not numeric checks.
    """
    if alpha.k != 1:
        raise PreconditionError("alpha must have K-component 1")
    if alpha.l.is_zero():
        raise PreconditionError("alpha must be a unit")
    a = alpha.l
    sig = tower.sigma.apply
    s = nth_root(a * sig(a), 3, invariance=tower.sigma)
    w = tower.iota10(a) * tower.iota01(a) / tower.M.from_base(a)
    t_over_s = nth_root(w, 3, invariance=tower.tau, fixed_basis=tower.Mplus_basis)
    one_l = tower.L.one()
    rho = TensorElem(Q1, one_l, one_l, sig(a) / s, s, t_over_s)
    zeta = tower.zeta3
    if weil_sign not in (1, -1):
        raise PreconditionError("weil_sign must be +1 or -1")
    eps6 = zeta if weil_sign == 1 else (-tower.M.one()) - zeta
    epsilon = TensorElem(Q1, one_l, one_l, one_l, one_l, eps6)
    data = RhoData(alpha, rho, epsilon, s, t_over_s, zeta, weil_sign)
    # exact postconditions
    if not (partial_map(alpha, tower) == rho ** 3):
        raise PreconditionError("partial(alpha) != rho^3")
    if not (sig(rho.c4) * rho.c5 == a):
        raise PreconditionError("product condition failed")
    return data


def scale_by_cube(rho_data: RhoData, beta: NFElem, tower: TorsionTower,
                  power: int = 1) -> RhoData:
    """RhoData for alpha^power * beta^3 from an existing RhoData.

    rho is multiplicative and the cube contributes the exact coboundary
    partial(beta), so no new root extraction is needed.
    """
    if beta.is_zero():
        raise PreconditionError("beta must be a unit")
    b = EtaleElem(1, beta)
    alpha = EtaleElem(1, rho_data.alpha.l ** power * beta ** 3)
    rho = rho_data.rho ** power * partial_map(b, tower)
    sig = tower.sigma.apply
    s = rho_data.cube_root_u ** power * (beta * sig(beta))
    tv = rho_data.cube_root_v ** power * \
        (tower.iota10(beta) * tower.iota01(beta) / tower.M.from_base(beta))
    data = RhoData(alpha, rho, rho_data.epsilon, s, tv, rho_data.zeta3,
                   rho_data.weil_sign)
    if not (partial_map(alpha, tower) == rho ** 3):
        raise PreconditionError("partial(alpha) != rho^3 after cube scaling")
    if not (sig(rho.c4) * rho.c5 == alpha.l):
        raise PreconditionError("product condition failed after cube scaling")
    return data


def eps_rho_mul(rho_data: RhoData, tower: TorsionTower,
                x: EtaleElem, y: EtaleElem) -> EtaleElem:
    """x *_{eps rho} y = Tr(eps rho (x tensor y)), basis-free."""
    er = rho_data.eps_rho()
    sig = tower.sigma.apply
    k_part = QQ(er.c1) * x.k * y.k + (er.c5 * x.l * sig(y.l)).trace_to_Q()
    l_part = (er.c2 * x.l * y.k + er.c3 * y.l * x.k + er.c4 * sig(x.l) * sig(y.l)
              + (er.c6 * tower.iota10(x.l) * tower.iota01(y.l)).rel_trace())
    return EtaleElem(k_part, l_part)


# -- orbit-model evaluation (oracle support) -----------------------------------------


def etale_value(tower: TorsionTower, r: EtaleElem, lab: Label) -> MElem:
    """Value of r at the torsion point with the given label ((0,0) = origin)."""
    if lab == (0, 0):
        return tower.M.from_rational(r.k)
    return tower.value_at_label(r.l, lab)


def _g_sending_t_to(lab: Label) -> Tuple[int, int, int, int]:
    """Some g in GL2(Z/3) with g(1,1) = lab."""
    i, j = lab
    for c2 in ((0, 1), (1, 0), (1, 1), (2, 1), (1, 2)):
        c1 = ((i - c2[0]) % 3, (j - c2[1]) % 3)
        det = (c1[0] * c2[1] - c1[1] * c2[0]) % 3
        if det:
            return (c1[0], c2[0], c1[1], c2[1])
    raise PreconditionError("no invertible matrix (label (0,0)?)")


def tensor_value(tower: TorsionTower, t: TensorElem, lab1: Label, lab2: Label) -> MElem:
    """Value of t at the pair of torsion points (lab1, lab2)."""
    M = tower.M
    neg = lambda a: ((-a[0]) % 3, (-a[1]) % 3)
    if lab1 == (0, 0) and lab2 == (0, 0):
        return M.from_rational(t.c1)
    if lab2 == (0, 0):
        g = _g_sending_t_to(lab1)
        return tower.automorphism(g).apply(M.from_base(t.c2))
    if lab1 == (0, 0):
        g = _g_sending_t_to(lab2)
        return tower.automorphism(g).apply(M.from_base(t.c3))
    if lab1 == lab2:
        g = _g_sending_t_to(neg(lab1))
        return tower.automorphism(g).apply(M.from_base(t.c4))
    if lab2 == neg(lab1):
        g = _g_sending_t_to(lab1)
        return tower.automorphism(g).apply(M.from_base(t.c5))
    # independent pair: g columns are the labels themselves
    g = (lab1[0], lab2[0], lab1[1], lab2[1])
    return tower.automorphism(g).apply(t.c6)


# -- Gamma-group counting --------------------------------------------------------------


@dataclass
class GammaGroup:
    n: int
    generators_of_G: List[Tuple[int, int, int, int]]
    gamma_order: int
    partial_gamma_order: int
    mu_n_R_order: int
    torsion_order: int
    w1_kernel_order: int


def gamma_count(n: int, generators: Sequence[Sequence[int]]) -> GammaGroup:
    """Order of Gamma and friends by linear algebra over Z/n.

    Generators are 2x2 matrices (a,b,c,d) or [[a,b],[c,d]], invertible mod n.
    """
    gens = []
    for g in generators:
        if len(g) == 2:
            a, b = g[0]
            c, d = g[1]
        else:
            a, b, c, d = g
        a, b, c, d = a % n, b % n, c % n, d % n
        det = (a * d - b * c) % n
        from math import gcd as _gcd
        if _gcd(det, n) != 1:
            raise PreconditionError("generator not invertible mod n")
        gens.append((a, b, c, d))

    pts = [(i, j) for i in range(n) for j in range(n)]
    idx = {p: k for k, p in enumerate(pts)}

    def act(g, p):
        a, b, c, d = g
        return ((a * p[0] + b * p[1]) % n, (c * p[0] + d * p[1]) % n)

    gamma_rows = []
    mu_rows = []
    tor_rows = []
    for g in gens:
        a, b, c, d = g
        det = (a * d - b * c) % n
        for p in pts:
            row = [0] * (n * n)
            row[idx[act(g, p)]] += 1
            row[idx[p]] -= det
            mu_rows.append(row)
        for p1 in pts:
            for p2 in pts:
                psum = ((p1[0] + p2[0]) % n, (p1[1] + p2[1]) % n)
                row = [0] * (n * n)
                row[idx[act(g, p1)]] += 1
                row[idx[act(g, p2)]] += 1
                row[idx[act(g, psum)]] -= 1
                row[idx[p1]] -= det
                row[idx[p2]] -= det
                row[idx[psum]] += det
                gamma_rows.append(row)
        tor_rows.append([a - 1, b])
        tor_rows.append([c, d - 1])

    gamma_order = count_solutions_mod(gamma_rows, n, n * n)
    mu_order = count_solutions_mod(mu_rows, n, n * n)
    tor_order = count_solutions_mod(tor_rows, n, 2)
    assert gamma_order % (n * n) == 0
    partial = gamma_order // (n * n)
    assert mu_order % tor_order == 0
    d_mu = mu_order // tor_order
    assert partial % d_mu == 0
    return GammaGroup(n, gens, gamma_order, partial, mu_order, tor_order,
                      partial // d_mu)
