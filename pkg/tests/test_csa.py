"""Structure algebras: obstruction algebra fixtures, orders, trivialisation."""

import random

import pytest

from threedescent.csa import (OrderLattice, StructureAlgebra,
                              find_zero_divisor, good_basis, gram_intrinsic,
                              gram_real_split, maximal_order,
                              obstruction_algebra, order_discriminant,
                              trivialize)
from threedescent.errors import PreconditionError
from threedescent.qmat import det, inverse, mat, mat_mul
from threedescent.qpoly import QPoly
from threedescent.rat import QQ, Q0, Q1


def std_order(alg):
    return OrderLattice(alg, [[Q1 if i == j else Q0 for j in range(alg.dim)]
                              for i in range(alg.dim)])


def mat3_conjugate_algebra(seed):
    rng = random.Random(seed)
    while True:
        g = [[rng.randrange(-9, 10) for _ in range(3)] for _ in range(3)]
        d = det(mat(g))
        if d in (1, -1):
            break
    gi = inverse(mat(g))
    units = []
    for r in range(3):
        for s in range(3):
            e = [[Q1 if (i, j) == (r, s) else Q0 for j in range(3)]
                 for i in range(3)]
            units.append(mat_mul(mat_mul(mat(g), e), gi))
    b = [[units[j][r][s] for j in range(9)] for r in range(3) for s in range(3)]
    binv = inverse(b)
    tab = []
    for i in range(9):
        row = []
        for j in range(9):
            prod = mat_mul(units[i], units[j])
            v = [prod[r][s] for r in range(3) for s in range(3)]
            row.append([sum(binv[k][t] * v[t] for t in range(9))
                        for k in range(9)])
        tab.append(row)
    return StructureAlgebra(9, tab)


class TestStructureAlgebra:
    def test_associativity_rejects_garbage(self):
        tab = [[[QQ(1) if k == 0 else Q0 for k in range(4)]
                for _ in range(4)] for _ in range(4)]
        tab[1][1][1] = QQ(1)
        with pytest.raises(PreconditionError):
            StructureAlgebra(4, tab)

    def test_identity_minpoly_rank(self, alg681_ref):
        one = alg681_ref.one()
        assert one.min_poly() == QPoly([-1, 1])
        assert one.rank_of() == 3

    def test_a2_minpoly(self, alg681_ref):
        a2 = alg681_ref.elem([0, 1, 0, 0, 0, 0, 0, 0, 0])
        assert a2.min_poly() == QPoly([162, 0, 0, 1])

    def test_a4_zero_divisor(self, alg681_ref):
        a4 = alg681_ref.elem([0, 0, 0, 1, 0, 0, 0, 0, 0])
        assert a4.min_poly() == QPoly([0, 0, 1])
        assert a4.rank_of() == 1

    def test_all_reference_minpolys(self, alg681_ref):
        expected = [
            QPoly([-1, 1]), QPoly([162, 0, 0, 1]), QPoly([-227, -12, 0, 1]),
            QPoly([0, 0, 1]), QPoly([-470, -12, 0, 1]), QPoly([-470, -12, 0, 1]),
            QPoly([-367, -147, 0, 1]), QPoly([1307, -201, 0, 1]),
            QPoly([254, 123, 0, 1])]
        for i, mp in enumerate(expected):
            e = [Q1 if t == i else Q0 for t in range(9)]
            assert alg681_ref.elem(e).min_poly() == mp

    def test_reduced_trace_linear(self, alg681_ref):
        rng = random.Random(0)
        x = alg681_ref.elem([QQ(rng.randrange(-3, 4)) for _ in range(9)])
        y = alg681_ref.elem([QQ(rng.randrange(-3, 4)) for _ in range(9)])
        assert (x + y).reduced_trace() == x.reduced_trace() + y.reduced_trace()


class TestObstructionAlgebra:
    def test_reference_rows_byte_exact(self, alg681_ref):
        t = alg681_ref.table

        def row(i, j):
            return [int(x) for x in t[i][j]]

        assert row(1, 1) == [0, 0, -3, 0, -3, -3, 0, 0, 0]
        assert row(1, 2) == [0, 2, 3, 0, 0, 0, 0, 3, 0]
        assert row(1, 7) == [0, 7, -3, 9, 0, 0, 0, -3, 0]
        assert row(1, 8) == [-3, 4, 3, 0, -3, 6, -3, 3, 0]

    def test_reference_order_disc(self, alg681_ref):
        assert order_discriminant(std_order(alg681_ref)) == 3 ** 20 * 227 ** 4

    def test_good_basis_integral_same_disc(self, alg681_auto):
        assert all(x.denominator == 1 for row in alg681_auto.table
                   for cell in row for x in cell)
        assert order_discriminant(std_order(alg681_auto)) == 3 ** 20 * 227 ** 4

    def test_1722_rows_byte_exact(self, rho1722, tower1722):
        from threedescent.jsonio import load_json, rat_in
        from conftest import problem_path
        data = load_json(problem_path("1722f1.json"))
        basis = [tower1722.L.elem([rat_in(x) for x in v])
                 for v in data["reference_basis"]]
        alg = obstruction_algebra(rho1722, tower1722, basis)

        def row(i, j):
            return [int(x) for x in alg.table[i][j]]

        assert row(1, 1) == [56, -2, -2, 0, 2, 3, -2, 2, 1]
        assert row(1, 2) == [1, 6, 4, 7, 2, -8, 7, -4, 1]
        assert row(1, 7) == [28, -6, -4, -1, -5, 1, -5, 7, 2]
        assert row(1, 8) == [-39, 12, 6, 3, -1, -2, 0, -1, 4]

    def test_1722_disc(self, alg1722_auto):
        assert order_discriminant(std_order(alg1722_auto)) == \
            2 ** 4 * 3 ** 16 * 7 ** 6 * 41 ** 4

    def test_trivial_alpha_splits(self, tower681):
        from threedescent.etale import EtaleElem, build_rho
        L = tower681.L
        rd = build_rho(EtaleElem(1, L.one()), tower681)
        basis = [L.elem(QPoly.x(k) if k else QPoly([1])) for k in range(8)]
        alg = obstruction_algebra(rd, tower681, basis)
        res = trivialize(alg, seed=1)
        assert res.split and res.verify_structure(alg)

    def test_good_basis_trivial_weights(self, tower681, maxord681):
        # alpha = (1,1): c is the unit ideal, so the output is an LLL-reduced
        # basis of O_L under the plain T2 form: same lattice as O_L
        from threedescent import lattices as lat
        from threedescent.etale import EtaleElem
        from threedescent.orders import factor_principal_ideal
        alpha = EtaleElem(1, tower681.L.one())
        fact = factor_principal_ideal(alpha.l, 3, maxord681)
        gb = good_basis(alpha, tower681, fact)
        assert lat.lat_eq([b.coords() for b in gb], maxord681.rows)


class TestMaximalOrder:
    def test_681_disc_one(self, alg681_ref):
        omax = maximal_order(alg681_ref, std_order(alg681_ref))
        assert omax.discriminant() == 1

    def test_1722_nonsplit_disc(self, alg1722_auto):
        omax = maximal_order(alg1722_auto, std_order(alg1722_auto))
        assert omax.discriminant() == 3 ** 6 * 7 ** 6

    def test_mat3_already_maximal(self):
        alg = mat3_conjugate_algebra(5)
        start = std_order(alg)
        assert start.discriminant() == 1
        omax = maximal_order(alg, start)
        assert omax.discriminant() == 1

    def test_disc_quotient_square(self, alg681_ref):
        start = std_order(alg681_ref)
        omax = maximal_order(alg681_ref, start)
        q = QQ(start.discriminant(), omax.discriminant())
        from threedescent.rat import is_square
        assert q.denominator == 1 and is_square(q)

    def test_index_squared_law(self, alg681_ref):
        # Z + 2O is always an order; disc scales by the index squared
        from threedescent import lattices as lat
        start = std_order(alg681_ref)
        rows = [list(alg681_ref.identity_coords)]
        rows += [[x * 2 for x in r] for r in start.rows]
        sub = OrderLattice(alg681_ref, rows)
        index = lat.lat_index(sub.rows, start.rows)
        assert index.denominator == 1 and int(index) > 1
        assert sub.discriminant() == int(index) ** 2 * start.discriminant()


class TestTrivialize:
    def test_681_split_verified(self, triv681_auto, alg681_auto):
        assert triv681_auto.split
        assert triv681_auto.verify_structure(alg681_auto)

    def test_681_real_split_path(self, alg681_auto):
        res = trivialize(alg681_auto, seed=3)
        assert res.split and res.verify_structure(alg681_auto)

    def test_1722_nonsplit(self, alg1722_auto):
        res = trivialize(alg1722_auto, seed=0)
        assert not res.split
        assert res.max_order_disc.factors == ((3, 6), (7, 6))

    def test_random_conjugates_quick(self):
        for seed in range(4):
            alg = mat3_conjugate_algebra(100 + seed)
            res = trivialize(alg, seed=seed)
            assert res.split and res.verify_structure(alg)

    def test_zero_divisor_norm_bound(self):
        # AM-GM: a maximal-order vector of Frobenius norm^2 < 3 is singular
        alg = mat3_conjugate_algebra(7)
        start = std_order(alg)
        gram = gram_real_split(start, 256, seed=0)
        x = find_zero_divisor(start, gram, seed=0)
        from threedescent.numfield import factor_poly_q
        assert len(factor_poly_q(x.min_poly())) > 1 or \
            factor_poly_q(x.min_poly())[0][1] > 1 or \
            factor_poly_q(x.min_poly())[0][0].degree < x.min_poly().degree


class TestIntrinsicGram:
    def test_det_matches_disc(self, alg681_auto, rho681, tower681,
                              goodbasis681):
        start = std_order(alg681_auto)
        omax = maximal_order(alg681_auto, start)
        gram = gram_intrinsic(omax, rho681, tower681, goodbasis681,
                              precision_bits=320)
        d = det(mat(gram))
        # det(pulled-back Frobenius gram) = Disc(O) = 1 for the maximal order
        assert abs(float(d) - 1.0) < 1e-6

    def test_weight_cube_rescale_congruence(self, rho681, tower681,
                                            goodbasis681, alg681_auto,
                                            fact681, alpha681):
        # scaling alpha by the cube of a rational changes the weights by
        # exact squares, so the Gram changes by a diagonal congruence; the
        # LLL-reduced basis transform is unchanged
        from threedescent.etale import EtaleElem
        a2 = EtaleElem(1, alpha681.l * QQ(8))  # 8 = 2^3
        from threedescent.etale import build_rho
        rd2 = build_rho(a2, tower681)
        start = std_order(alg681_auto)
        g1 = gram_intrinsic(start, rho681, tower681, goodbasis681)
        g2 = gram_intrinsic(start, rd2, tower681, goodbasis681)
        # weights scale by |8|^{2/3} = 4 on the L-part: equality up to the
        # last dyadic rounding digit
        tol = QQ(8, 1 << 128)
        for i in range(1, 9):
            for j in range(1, 9):
                assert abs(g2[i][j] - 4 * g1[i][j]) <= tol
