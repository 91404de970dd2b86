"""Type I/II quadrics, z0-elimination, trivialisation substitution, and the
final (2,2)-form linear algebra yielding the ternary cubic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cubic import TernaryCubic
from .errors import DimensionMismatch, NoCubicFound, PreconditionError
from .qmat import inverse, mat, mat_mul, rank, rref, right_kernel, solve, transpose
from .rat import QQ, Q0, Q1, lcm_list


def _monomials(nvars: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(nvars) for j in range(i, nvars)]


@dataclass
class QuadricSpace:
    """Linearly independent quadratic forms as coefficient vectors.

    `monos` lists the (i,j) index pairs (i <= j) labelling the columns.
    """

    nvars: int
    forms: List[List]
    monos: List[Tuple[int, int]]

    @staticmethod
    def from_vectors(nvars: int, vectors: List[List]) -> "QuadricSpace":
        qs = QuadricSpace(nvars, [list(v) for v in vectors], _monomials(nvars))
        if rank(mat(qs.forms)) != len(qs.forms):
            raise DimensionMismatch("quadric forms not linearly independent")
        return qs

    def dim(self) -> int:
        return len(self.forms)

    def contains(self, vec: Sequence) -> bool:
        return rank(mat(self.forms)) == rank(mat(self.forms + [list(vec)]))

    def echelon(self) -> "QuadricSpace":
        r, piv = rref(mat(self.forms))
        forms = [r[i] for i in range(len(piv))]
        return QuadricSpace(self.nvars, forms, self.monos)


def _coeff_vector_from_symmetric(entries, nvars: int) -> List:
    """entries[(i,j)] for i<=j -> flat vector in monomial order."""
    return [entries.get((i, j), Q0) for (i, j) in _monomials(nvars)]


def type_I_II_quadrics(tower, rho_data, basis_L: Sequence) -> QuadricSpace:
    """27 quadrics in z0..z8 from Q1 over the L+ basis and Q2 over the M+ basis.

    The first type-I quadric (the coefficient along 1 in L+) carries the X
    indeterminate and is dropped.
    """
    L, M = tower.L, tower.M
    n = L.degree
    sig = tower.sigma.apply
    rho = rho_data.rho
    sig_u = [sig(u) for u in basis_L]
    i10 = [tower.iota10(u) for u in basis_L]
    i01 = [tower.iota01(u) for u in basis_L]

    lplus = tower.Lplus_basis
    lp_mat = [list(col) for col in zip(*[b.coords() for b in lplus])]
    mplus = tower.Mplus_basis
    mp_mat = [list(col) for col in zip(*[b.qcoords() for b in mplus])]

    def lplus_coords(z) -> List:
        sol = solve(lp_mat, z.coords())
        if sol is None:
            raise PreconditionError("type-I coefficient not sigma-invariant")
        return sol

    def mplus_coords(z) -> List:
        sol = solve(mp_mat, z.qcoords())
        if sol is None:
            raise PreconditionError("type-II coefficient not tau-invariant")
        return sol

    # type I: Q1 = x_T z0^2 + rho5 z_T z_{-T}
    q1_entries = {}
    q1_entries[(0, 0)] = [tower.x_T]
    for i in range(n):
        for j in range(i, n):
            if i == j:
                c = rho.c5 * basis_L[i] * sig_u[i]
            else:
                c = rho.c5 * (basis_L[i] * sig_u[j] + basis_L[j] * sig_u[i])
            q1_entries[(i + 1, j + 1)] = [c]
    type1 = [dict() for _ in range(len(lplus))]
    for key, (c,) in q1_entries.items():
        for t, val in enumerate(lplus_coords(c)):
            if val != 0:
                type1[t][key] = val

    # type II: Q2 = (lambda_T + kappa_T) z0 z_T - rho4 z_{-T}^2 + rho6 z_10 z_01
    lam = tower.lambda_T
    kappa = (tower.iota10(lam) + tower.iota01(lam) - M.from_base(lam)) * QQ(1, 3)
    lamk = M.from_base(lam) + kappa
    rho4 = rho.c4
    rho6 = rho.c6
    q2_entries = {}
    for i in range(n):
        q2_entries[(0, i + 1)] = lamk * basis_L[i]
    for i in range(n):
        for j in range(i, n):
            if i == j:
                c = rho6 * (i10[i] * i01[i]) - M.from_base(rho4 * sig_u[i] * sig_u[i])
            else:
                c = rho6 * (i10[i] * i01[j] + i10[j] * i01[i]) \
                    - M.from_base(rho4 * (sig_u[i] * sig_u[j] * 2))
            q2_entries[(i + 1, j + 1)] = c
    type2 = [dict() for _ in range(len(mplus))]
    for key, c in q2_entries.items():
        for t, val in enumerate(mplus_coords(c)):
            if val != 0:
                type2[t][key] = val

    vectors = []
    for d in type1[1:]:
        vectors.append(_coeff_vector_from_symmetric(d, 9))
    for d in type2:
        vectors.append(_coeff_vector_from_symmetric(d, 9))
    qs = QuadricSpace.from_vectors(9, vectors)
    if qs.dim() != 27:
        raise DimensionMismatch(f"expected 27 quadrics, got {qs.dim()}")
    return qs


def eliminate_z0(qs: QuadricSpace) -> QuadricSpace:
    """Intersect the span with the forms free of z0 (dimension drops by 9)."""
    if qs.nvars != 9 or qs.dim() != 27:
        raise DimensionMismatch("eliminate_z0 expects 27 independent forms in z0..z8")
    z0_cols = [k for k, (i, j) in enumerate(qs.monos) if i == 0]
    other_cols = [k for k, (i, j) in enumerate(qs.monos) if i != 0]
    sub = [[f[k] for k in z0_cols] for f in qs.forms]
    combos = right_kernel([list(col) for col in zip(*sub)])
    if len(combos) != 18:
        raise DimensionMismatch(f"z0-elimination gave {len(combos)} forms, wanted 18")
    new_forms = []
    for c in combos:
        v = [Q0] * len(qs.forms[0])
        for t, ct in enumerate(c):
            if ct != 0:
                for k in range(len(v)):
                    v[k] += ct * qs.forms[t][k]
        assert all(v[k] == 0 for k in z0_cols)
        new_forms.append([v[k] for k in other_cols])
    out = QuadricSpace.from_vectors(8, new_forms)
    return out.echelon()


def _to_matrix(form: Sequence, nvars: int) -> List[List]:
    a = [[Q0] * nvars for _ in range(nvars)]
    for coeff, (i, j) in zip(form, _monomials(nvars)):
        if i == j:
            a[i][i] = QQ(coeff)
        else:
            a[i][j] = QQ(coeff) / 2
            a[j][i] = QQ(coeff) / 2
    return a


def _from_matrix(a: List[List], nvars: int) -> List:
    out = []
    for (i, j) in _monomials(nvars):
        out.append(a[i][i] if i == j else a[i][j] * 2)
    return out


def substitution_matrix(tower, basis_L: Sequence, triv_matrices,
                        fudge: bool = True) -> List[List]:
    """The 8x9 matrix S with z_i = S (z_11,...,z_33)^T.

    Composite of reading off coordinates through the trivialisation and the
    pointwise multiplication by y_T (the fudge-factor correction), then
    normalized to primitive integer form.  fudge=False (the negative
    control) skips the y_T multiplication.
    """
    n = len(basis_L)
    b = [[QQ(triv_matrices[j][r][s]) for j in range(9)]
         for r in range(3) for s in range(3)]
    binv = inverse(b)  # rows: coords in the r-basis of a matrix given by vec
    p_l = [binv[i] for i in range(1, 9)]
    if not fudge:
        s = p_l
    else:
        # multiplication by y_T in the basis_L coordinates
        bmat = [list(col) for col in zip(*[u.coords() for u in basis_L])]
        ycols = []
        for u in basis_L:
            prod = tower.y_T * u
            sol = solve(bmat, prod.coords())
            if sol is None:
                raise PreconditionError("basis_L does not span L")
            ycols.append(sol)
        y = [[ycols[j][i] for j in range(n)] for i in range(n)]
        s = mat_mul(y, p_l)
    den = lcm_list([x.denominator for row in s for x in row] or [1])
    si = [[int(x * den) for x in row] for row in s]
    from .rat import gcd
    g = 0
    for row in si:
        for x in row:
            g = gcd(g, x)
    if g > 1:
        si = [[x // g for x in row] for row in si]
    return [[QQ(x) for x in row] for row in si]


def substitute_trivialization(qs18: QuadricSpace, tower, basis_L,
                              triv_matrices,
                              fudge: bool = True) -> Tuple[QuadricSpace, List[List]]:
    """Rewrite the 18 quadrics in the matrix-entry coordinates z_11..z_33."""
    if qs18.dim() != 18 or qs18.nvars != 8:
        raise DimensionMismatch("expected 18 forms in z1..z8")
    s = substitution_matrix(tower, basis_L, triv_matrices, fudge=fudge)
    new_forms = []
    st = transpose(s)
    for form in qs18.forms:
        a = _to_matrix(form, 8)
        a2 = mat_mul(mat_mul(st, a), s)
        new_forms.append(_from_matrix(a2, 9))
    out = QuadricSpace.from_vectors(9, new_forms)
    return out, s


# -- cubic extraction -------------------------------------------------------------------

_X_CUBICS = [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (1, 0, 2),
             (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3)]
_X_QUADS = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
_Y_QUADS = _X_QUADS


def _var_split(m: int, transpose_xy: bool) -> Tuple[int, int]:
    r, s = divmod(m, 3)
    return (s, r) if transpose_xy else (r, s)


def extract_cubic(qs: QuadricSpace) -> Tuple[TernaryCubic, bool]:
    """Solve for the cubic f with y1^2 f in the span of the x_k-multiplied
    (2,2)-forms; retries with x/y roles switched (wrong Weil-pairing sign)."""
    if qs.nvars != 9 or qs.dim() != 18:
        raise DimensionMismatch("extract_cubic expects 18 forms in z_11..z_33")
    for transpose_xy in (False, True):
        cubic = _try_extract(qs, transpose_xy)
        if cubic is not None:
            if not cubic.is_nonsingular():
                raise NoCubicFound("extracted cubic is singular")
            return cubic, transpose_xy
    raise NoCubicFound("no ternary cubic in either orientation")


def quadrics_to_22forms(qs: QuadricSpace, transpose_xy: bool) -> List[List]:
    """Substitute z_{rs} = x_r y_s (or x_s y_r) into the matrix-space forms.

    Output vectors live over the 36 monomials (x-quadratic) x (y-quadratic).
    """
    xq_idx = {m: k for k, m in enumerate(_X_QUADS)}
    yq_idx = {m: k for k, m in enumerate(_Y_QUADS)}
    forms22 = []
    for form in qs.forms:
        vec = [Q0] * 36
        for coeff, (m, n) in zip(form, qs.monos):
            if coeff == 0:
                continue
            (r1, s1) = _var_split(m, transpose_xy)
            (r2, s2) = _var_split(n, transpose_xy)
            xe = [0, 0, 0]
            xe[r1] += 1
            xe[r2] += 1
            ye = [0, 0, 0]
            ye[s1] += 1
            ye[s2] += 1
            vec[xq_idx[tuple(xe)] * 6 + yq_idx[tuple(ye)]] += coeff
        forms22.append(vec)
    return forms22


def cubic_from_22forms(forms22: List[List]) -> Optional[TernaryCubic]:
    """The unique cubic f with y1^2 f in the span of the x_k-multiples.

    Returns None when the span contains no such form; raises NoCubicFound
    when the solution space is not one-dimensional.
    """
    xc_idx = {m: k for k, m in enumerate(_X_CUBICS)}
    yq_idx = {m: k for k, m in enumerate(_Y_QUADS)}
    cols = []
    for vec in forms22:
        for k in range(3):
            out = [Q0] * 60
            for idx, c in enumerate(vec):
                if c == 0:
                    continue
                xm = list(_X_QUADS[idx // 6])
                ym = idx % 6
                xm[k] += 1
                out[xc_idx[tuple(xm)] * 6 + ym] += c
            cols.append(out)
    y1sq = yq_idx[(2, 0, 0)]
    target_cols = []
    for j in range(10):
        out = [Q0] * 60
        out[j * 6 + y1sq] = Q1
        target_cols.append(out)
    big = [list(col) for col in
           zip(*(cols + [[-x for x in t] for t in target_cols]))]
    ker = right_kernel(big)
    proj = [v[len(cols):] for v in ker]
    pr = [p for p in proj if any(x != 0 for x in p)]
    if not pr:
        return None
    r, piv = rref(mat(pr))
    if len(piv) != 1:
        raise NoCubicFound(f"cubic solution space has dimension {len(piv)}")
    return TernaryCubic.from_coeffs(r[0]).primitive()


def _try_extract(qs: QuadricSpace, transpose_xy: bool) -> Optional[TernaryCubic]:
    return cubic_from_22forms(quadrics_to_22forms(qs, transpose_xy))
