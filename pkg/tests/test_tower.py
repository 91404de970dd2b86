"""Tower assembly: torsion checks, embeddings, involutions, Weil pairing."""

import pytest

from threedescent.errors import NonGenericAction, PreconditionError
from threedescent.numfield import roots_in_field
from threedescent.qpoly import QPoly
from threedescent.rat import QQ
from threedescent.tower import (build_torsion_data, chord_slope, derive_tower,
                                ec_add, ec_mul)


class TestDeriveTower:
    def test_lambda_681(self, tower681):
        assert tower681.lambda_T.poly == QPoly([0, -705, 0, 15, 0, 0, 0, -3])

    def test_zeta3(self, tower681):
        z = tower681.zeta3
        one = tower681.M.one()
        assert not z == one
        assert (z * z + z + one).is_zero()

    def test_tau_swaps_iotas(self, tower681):
        assert tower681.tau.apply(tower681.u10) == tower681.u01
        assert tower681.tau.apply(tower681.u01) == tower681.u10

    def test_pairing_condition(self, tower681):
        a4m = tower681.a4_M()
        p10 = tower681.point_of_root(tower681.u10)
        p01 = tower681.point_of_root(tower681.u01)
        assert ec_add(p10, p01, a4m) == tower681.t_point_M()

    def test_roots_are_roots(self, tower681):
        f = tower681.L.poly
        from threedescent.tower import _eval_qpoly_in
        for lab, r in tower681.roots_by_label().items():
            assert _eval_qpoly_in(f, r, tower681.M).is_zero()

    def test_roots_distinct(self, tower681):
        roots = list(tower681.roots_by_label().values())
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                assert not roots[i] == roots[j]

    def test_fixed_space_dims(self, tower681):
        assert len(tower681.Lplus_basis) == 4
        assert len(tower681.Mplus_basis) == 24
        assert tower681.Lplus_basis[0] == tower681.L.one()

    def test_slopes_lemma(self, tower681):
        # lambda(T10,T01) = (iota10(lambda_T) + iota01(lambda_T) - lambda_T)/3
        lam = tower681.lambda_T
        p10 = tower681.point_of_root(tower681.u10)
        p01 = tower681.point_of_root(tower681.u01)
        lhs = chord_slope(p10, p01, tower681.a4_M())
        rhs = (tower681.iota10(lam) + tower681.iota01(lam)
               - tower681.M.from_base(lam)) * QQ(1, 3)
        assert lhs == rhs

    def test_slopes_lemma_1722(self, tower1722):
        lam = tower1722.lambda_T
        p10 = tower1722.point_of_root(tower1722.u10)
        p01 = tower1722.point_of_root(tower1722.u01)
        lhs = chord_slope(p10, p01, tower1722.a4_M())
        rhs = (tower1722.iota10(lam) + tower1722.iota01(lam)
               - tower1722.M.from_base(lam)) * QQ(1, 3)
        assert lhs == rhs

    def test_tampered_coordinate_rejected(self, prob681):
        t = prob681.tower
        bad = QPoly(list(t["y_T"].c))
        bad.c[1] = -bad.c[1]  # corrupt one coefficient
        with pytest.raises(PreconditionError):
            derive_tower(prob681.a4, prob681.a6, t["f"], t["x_T"], bad)

    def test_automorphism_multiplicative(self, tower681):
        g = (1, 1, 0, 1)
        auto = tower681.automorphism(g)
        u = tower681.M.from_base(tower681.L.gen())
        v = tower681.M.gen()
        assert auto.apply(u * v) == auto.apply(u) * auto.apply(v)


class TestBuildTorsionData:
    def test_681b1_isomorphic_field(self, prob681):
        f, x_t, y_t = build_torsion_data(prob681.a4, prob681.a6)
        tower = derive_tower(prob681.a4, prob681.a6, f, x_t, y_t)
        ref = prob681.tower["f"]
        assert len(roots_in_field(ref, tower.L, precisions=(256,))) > 0

    def test_rational_three_torsion_rejected(self):
        # y^2 = x^3 + 16 has the rational 3-torsion point (0, 4)
        with pytest.raises(NonGenericAction):
            build_torsion_data(QQ(0), QQ(16))


class TestPointArithmetic:
    def test_three_torsion(self, tower681):
        t = tower681.t_point_M()
        a4m = tower681.a4_M()
        assert ec_mul(3, t, a4m).inf
        assert not ec_mul(2, t, a4m).inf
