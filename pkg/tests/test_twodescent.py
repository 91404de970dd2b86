"""2-descent quadrics and the conic in the pencil."""

import pytest

from threedescent.errors import NormNotSquare, PreconditionError
from threedescent.qpoly import QPoly
from threedescent.twodescent import U_MONOS3, two_descent_equations


class TestTwoDescent:
    def test_unit_alpha_conic_identity(self):
        # conic coefficient of u0^2 = sum 1/f'(e_i) = 0 for any cubic
        for coeffs in ([0, -1, 0, 1], [-2, -1, 0, 1], [7, -5, 1, 1]):
            f2 = QPoly(coeffs)
            eqs = two_descent_equations(f2, QPoly([1]), 1)
            assert eqs.conic[U_MONOS3.index((0, 0))] == 0
            assert eqs.conic_in_pencil()

    def test_split_case(self):
        eqs = two_descent_equations(QPoly([0, -1, 0, 1]), QPoly([1]), 1)
        assert eqs.conic_in_pencil()
        # quadric2 must be free of u3
        for k, (i, j) in enumerate(
                [(i, j) for i in range(4) for j in range(i, 4)]):
            if 3 in (i, j):
                assert eqs.quadric2[k] == 0

    def test_nontrivial_alpha(self):
        # f2 = x^3 - x, alpha = e^2 + 1: values 1, 2, 2 at the roots, N = 4
        f2 = QPoly([0, -1, 0, 1])
        alpha = QPoly([1, 0, 1])
        assert f2.resultant(alpha) == 4
        eqs = two_descent_equations(f2, alpha, 2)
        assert eqs.conic_in_pencil()

    def test_norm_not_square(self):
        with pytest.raises(NormNotSquare):
            two_descent_equations(QPoly([-2, -1, 0, 1]), QPoly([0, 1]), 1)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            two_descent_equations(QPoly([1, 0, 0, 2]), QPoly([1]), 1)
        with pytest.raises(PreconditionError):
            two_descent_equations(QPoly([0, 0, 1, 1]), QPoly([1]), 1)
