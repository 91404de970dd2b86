"""Ternary cubic invariants and local solubility against the worked values."""

import pytest

from threedescent.cubic import TernaryCubic, locally_soluble, weierstrass_cubic
from threedescent.errors import PreconditionError
from threedescent.qmat import det, mat
from threedescent.rat import QQ


class TestInvariants:
    def test_weierstrass_normalization(self):
        for (a, b) in [(1, 1), (-3, 5), (0, 2)]:
            f = weierstrass_cubic(a, b)
            c4, c6, disc, j = f.invariants()
            assert c4 == -48 * QQ(a) and c6 == -864 * QQ(b)
            assert disc == -16 * (4 * QQ(a) ** 3 + 27 * QQ(b) ** 2)

    def test_126a3_disc(self, cubics):
        assert cubics["126a3_F1"].disc() == -(2 ** 6) * 3 ** 6 * 7 ** 3
        assert cubics["126a3_F2"].disc() == -(2 ** 6) * 3 ** 6 * 7 ** 3

    def test_1722f1_disc(self, cubics):
        expect = -(2 ** 8) * 3 ** 3 * 7 ** 3 * 41
        assert cubics["1722f1_F1"].disc() == expect
        assert cubics["1722f1_F2"].disc() == expect

    def test_681b1_all_same_disc(self, cubics):
        vals = {str(cubics[k].disc()) for k in
                ("681b1_F1", "681b1_F2", "681b1_F3", "681b1_F4")}
        assert vals == {str(3 ** 10 * 227 ** 2)}

    def test_triangle_singular(self):
        tri = TernaryCubic.from_coeffs([0, 0, 0, 0, 1, 0, 0, 0, 0, 0])
        assert tri.disc() == 0

    def test_fermat(self):
        f = TernaryCubic.from_coeffs([1, 0, 0, 0, 0, 0, 1, 0, 0, 1])
        c4, c6, disc, j = f.invariants()
        assert j == 0 and disc != 0

    def test_gl3_covariance(self, cubics):
        f = cubics["126a3_F1"]
        g = [[1, 2, 0], [0, 1, 3], [1, 1, 1]]
        dg = det(mat([[QQ(x) for x in r] for r in g]))
        fg = f.scale_vars(g)
        c4, c6, disc, j = f.invariants()
        c4g, c6g, discg, jg = fg.invariants()
        assert c4g == c4 * dg ** 4
        assert c6g == c6 * dg ** 6
        assert discg == disc * dg ** 12
        assert jg == j


class TestLocalSolubility:
    def test_126a3_insoluble_2_7(self, cubics):
        f = cubics["126a3_F1"]
        assert locally_soluble(f, 2) is False
        assert locally_soluble(f, 7) is False

    def test_126a3_soluble_elsewhere(self, cubics):
        f = cubics["126a3_F1"]
        for p in (3, 5, 11):
            assert locally_soluble(f, p) is True

    def test_1722f1_insoluble_3_7(self, cubics):
        f = cubics["1722f1_F1"]
        assert locally_soluble(f, 3) is False
        assert locally_soluble(f, 7) is False
        assert locally_soluble(f, 2) is True

    def test_681b1_sha_everywhere_soluble(self, cubics):
        for k in ("681b1_F1", "681b1_F2", "681b1_F3", "681b1_F4"):
            f = cubics[k]
            for p in (2, 3, 227):
                assert locally_soluble(f, p) is True
            assert locally_soluble(f, "real") is True

    def test_obvious_point(self):
        # x^3 + y^3 + z^3 has (1 : -1 : 0)
        f = TernaryCubic.from_coeffs([1, 0, 0, 0, 0, 0, 1, 0, 0, 1])
        for p in (2, 3, 5, 7, 13):
            assert locally_soluble(f, p) is True

    def test_singular_rejected(self):
        tri = TernaryCubic.from_coeffs([0, 0, 0, 0, 1, 0, 0, 0, 0, 0])
        with pytest.raises(PreconditionError):
            locally_soluble(tri, 5)
