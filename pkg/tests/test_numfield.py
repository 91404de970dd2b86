"""number-fields module: arithmetic, embeddings, roots, subfields, nth roots."""

import pytest

from threedescent.errors import (AmbiguousRoot, DivisionByZeroElem,
                                 PreconditionError)
from threedescent.numfield import (Involution, NumberField, complex_embeddings,
                                   fixed_subfield_basis, nth_root,
                                   roots_in_field)
from threedescent.qpoly import QPoly
from threedescent.rat import QQ

F681 = QPoly([-3, 0, 235, 0, -6, 0, 0, 0, 1])


@pytest.fixture(scope="module")
def L():
    return NumberField(F681)


class TestArithmetic:
    def test_norm_of_generator(self, L):
        # (-1)^8 times the constant term of f
        assert L.gen().norm_to_Q() == -3

    def test_trace_of_one(self, L):
        assert L.one().trace_to_Q() == 8

    def test_inverse(self, L):
        u = L.gen()
        z = u * u - L.from_rational(QQ(1, 2))
        assert (z * z.inverse()) == L.one()
        with pytest.raises(DivisionByZeroElem):
            L.zero().inverse()

    def test_minimal_poly_of_usq(self, L):
        u2 = L.gen() ** 2
        mp = u2.minimal_poly()
        assert mp.degree == 4
        # verify it annihilates u^2
        acc = L.zero()
        for c in reversed(mp.c):
            acc = acc * u2 + L.from_rational(c)
        assert acc.is_zero()
        assert mp.is_monic()

    def test_trace_matches_embeddings(self, L):
        z = L.gen() ** 3 + L.from_rational(2)
        roots = L.complex_roots(128)
        num = sum(z.embed(r) for r, _ in roots)
        from threedescent.numfield import q_to_mpf
        assert abs(num - q_to_mpf(z.trace_to_Q())) < 1e-20


class TestEmbeddings:
    def test_sqrt2(self):
        K = NumberField(QPoly([-2, 0, 1]))
        roots = complex_embeddings(K, 64)
        vals = sorted(float(r.real) for r, _ in roots)
        assert abs(vals[1] - 2 ** 0.5) < 1e-9
        assert all(rad < 2 ** -32 for _, rad in roots)

    def test_f681_roots_closed_under_negation(self, L):
        roots = [r for r, _ in L.complex_roots(128)]
        for r in roots:
            assert any(abs(r + s) < 1e-20 for s in roots)

    def test_cyclotomic(self):
        K = NumberField(QPoly([1, 1, 1]))
        roots = complex_embeddings(K, 64)
        assert all(abs(abs(r) - 1) < 1e-9 for r, _ in roots)

    def test_precision_floor(self, L):
        with pytest.raises(PreconditionError):
            L.complex_roots(32)


class TestRoots:
    def test_linear(self, L):
        rts = roots_in_field(QPoly([QQ(-5, 7), 1]), L)
        assert len(rts) == 1 and rts[0] == L.from_rational(QQ(5, 7))

    def test_zeta3_in_cyclotomic(self):
        K = NumberField(QPoly([1, 1, 1]))
        rts = roots_in_field(QPoly([1, 1, 1]), K, precisions=(192,))
        assert len(rts) == 2
        for z in rts:
            assert (z * z + z + K.one()).is_zero()

    def test_roots_of_f_in_L(self, L):
        rts = roots_in_field(F681, L, precisions=(256,))
        u = L.gen()
        assert sorted(str(r.poly) for r in rts) == sorted(
            [str(u.poly), str((-u).poly)])


class TestFixedSubfield:
    def test_even_powers(self, L):
        sigma = Involution(L, -L.gen())
        basis = fixed_subfield_basis(L, sigma)
        assert len(basis) == 4
        assert basis[0] == L.one()
        for b in basis:
            assert sigma.apply(b) == b
            assert all(b.poly[k] == 0 for k in range(1, 8, 2))

    def test_identity_involution(self, L):
        iden = Involution(L, L.gen())
        basis = fixed_subfield_basis(L, iden)
        assert len(basis) == 8


class TestNthRoot:
    def test_cube_root_in_Q(self):
        K = NumberField(QPoly([0, 1]))
        z = nth_root(K.from_rational(8), 3)
        assert z == K.from_rational(2)

    def test_invariant_cube_root(self, L):
        sigma = Involution(L, -L.gen())
        a = L.elem([QQ(x, 18) for x in [-3, -27, -5, -9, -1, 0, 1]])
        w = a * sigma.apply(a)
        s = nth_root(w, 3, invariance=sigma)
        assert s == -(L.gen() ** 2)

    def test_ambiguous_in_cyclotomic(self):
        K = NumberField(QPoly([1, 1, 1]))
        with pytest.raises(AmbiguousRoot):
            nth_root(K.one(), 3, precisions=(192,))

    def test_output_power_identity(self, L):
        z = L.gen() ** 2 + L.from_rational(1)
        w = z ** 3
        got = nth_root(w, 3)
        assert got ** 3 == w
