"""All-integer LLL on a Gram matrix, with unimodular transform.

The core follows the classical integral formulation (d_i = Gram-Schmidt
determinants, lambda_{ij} = d_{j+1} mu_{ij}, all integers), so reduction is
exact for any positive-definite integer Gram matrix.  Rational forms are
scaled to integer ones first; scaling changes neither the reduced transform
nor LLL-reducedness.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .errors import FormNotPositiveDefinite
from .rat import QQ, lcm_list

IMat = List[List[int]]

DELTA_DEFAULT = (99, 100)  # strongest standard Lovasz parameter


def lll_gram(gram: IMat, delta: Tuple[int, int] = DELTA_DEFAULT) -> Tuple[IMat, IMat]:
    """Reduce the lattice with inner products `gram`.

    Returns (U, G') with U unimodular and G' = U gram U^T the Gram matrix of
    the reduced basis.  Raises FormNotPositiveDefinite if the form fails to
    be positive definite on the span (which also catches dependent input).
    """
    n = len(gram)
    num, den = delta
    if not (4 * num > 1 * den and num < den):
        raise ValueError("delta must satisfy 1/4 < delta < 1")
    cg = [[int(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(i):
            if cg[i][j] != cg[j][i]:
                raise ValueError("gram matrix must be symmetric")
    h = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return h, cg
    lam = [[0] * n for _ in range(n)]
    d = [0] * (n + 1)
    d[0] = 1
    d[1] = cg[0][0]
    if d[1] <= 0:
        raise FormNotPositiveDefinite("form not positive definite")

    def red(k: int, l: int) -> None:
        two = 2 * lam[k][l]
        if abs(two) > d[l + 1]:
            q = (two + d[l + 1]) // (2 * d[l + 1])
            if q:
                for t in range(n):
                    h[k][t] -= q * h[l][t]
                for t in range(n):
                    cg[k][t] -= q * cg[l][t]
                for t in range(n):
                    cg[t][k] -= q * cg[t][l]
                lam[k][l] -= q * d[l + 1]
                for i in range(l):
                    lam[k][i] -= q * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        h[k], h[k - 1] = h[k - 1], h[k]
        cg[k], cg[k - 1] = cg[k - 1], cg[k]
        for t in range(n):
            cg[t][k], cg[t][k - 1] = cg[t][k - 1], cg[t][k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_v = lam[k][k - 1]
        b = (d[k - 1] * d[k + 1] + lam_v * lam_v) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_v * t) // d[k]
            lam[i][k - 1] = (b * t + lam_v * lam[i][k]) // d[k + 1]
        d[k] = b

    kmax = 0
    k = 1
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = cg[k][j]
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k + 1] = u
                    if u <= 0:
                        raise FormNotPositiveDefinite(
                            "form not positive definite on the basis span")
        while True:
            red(k, k - 1)
            if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
                swap(k, kmax)
                k = max(k - 1, 1)
            else:
                break
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    return h, cg


def gram_of_int_rows(rows: Sequence[Sequence[int]]) -> IMat:
    n = len(rows)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1):
            s = 0
            rj = rows[j]
            for a, b in zip(ri, rj):
                if a and b:
                    s += a * b
            g[i][j] = g[j][i] = s
    return g


def lll_int_rows(rows: Sequence[Sequence[int]],
                 delta: Tuple[int, int] = DELTA_DEFAULT) -> Tuple[IMat, IMat]:
    """Euclidean LLL of integer row vectors; returns (reduced rows, U)."""
    u, _ = lll_gram(gram_of_int_rows(rows), delta)
    red = [[sum(u[i][t] * rows[t][j] for t in range(len(rows)))
            for j in range(len(rows[0]))] for i in range(len(rows))]
    return red, u


def lll_reduce(basis: Sequence[Sequence], form: Sequence[Sequence],
               delta=QQ(99, 100)) -> Tuple[List[List], IMat]:
    """LLL-reduce rational `basis` vectors w.r.t. the rational Gram `form`.

    Returns (reduced basis, unimodular transform U) with reduced = U @ basis.
    The Gram determinant is preserved exactly (U unimodular); callers assert
    this where the contract requires it.
    """
    dq = QQ(delta)
    b = [[QQ(x) for x in row] for row in basis]
    f = [[QQ(x) for x in row] for row in form]
    n = len(b)
    gram = [[sum((b[i][s] * f[s][t] * b[j][t]
                  for s in range(len(f)) for t in range(len(f)) if b[i][s] != 0),
                 QQ(0)) for j in range(n)] for i in range(n)]
    scale = lcm_list([g.denominator for row in gram for g in row] or [1])
    gi = [[int(g * scale) for g in row] for row in gram]
    u, _ = lll_gram(gi, (int(dq.numerator), int(dq.denominator)))
    red = [[sum((QQ(u[i][t]) * b[t][j] for t in range(n)), QQ(0))
            for j in range(len(b[0]))] for i in range(n)]
    return red, u
