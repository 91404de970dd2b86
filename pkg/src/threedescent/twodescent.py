"""Classical 2-descent equations from x - e u3^2 = alpha u^2.

alpha lives in the etale cubic algebra Q[e]/(f2); expanding and equating
coefficients of powers of e gives two quadrics in u0..u3, and the conic is
the trace form Tr(alpha u^2 / f2'(e)), which is the e^2-coefficient quadric.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .errors import NormNotSquare, PreconditionError
from .qmat import mat, rank
from .qpoly import QPoly
from .rat import QQ, Q0, Q1

U_MONOS4 = [(i, j) for i in range(4) for j in range(i, 4)]
U_MONOS3 = [(i, j) for i in range(3) for j in range(i, 3)]


@dataclass
class TwoDescentEquations:
    quadric1: List   # coefficients over U_MONOS4 (involves u3^2)
    quadric2: List   # coefficients over U_MONOS4 (free of u3)
    conic: List      # coefficients over U_MONOS3

    def conic_in_pencil(self) -> bool:
        conic4 = []
        for (i, j) in U_MONOS4:
            if i < 3 and j < 3:
                conic4.append(self.conic[U_MONOS3.index((i, j))])
            else:
                conic4.append(Q0)
        base = mat([self.quadric1, self.quadric2])
        return rank(base) == rank(mat([self.quadric1, self.quadric2, conic4]))


def two_descent_equations(f2: QPoly, alpha: QPoly, b) -> TwoDescentEquations:
    """Pencil quadrics and the conic for y^2 = f2(x), alpha of square norm b^2."""
    if f2.degree != 3 or not f2.is_monic():
        raise PreconditionError("f2 must be a monic cubic")
    if not f2.is_squarefree():
        raise PreconditionError("f2 must be squarefree")
    b = QQ(b)
    alpha = alpha % f2
    if alpha.is_zero():
        raise PreconditionError("alpha must be a unit")
    nrm = f2.resultant(alpha)
    if nrm != b * b:
        raise NormNotSquare(f"N(alpha) = {nrm} != ({b})^2")

    # alpha * e^(i+j) mod f2 for i+j <= 4
    powers = []
    cur = alpha
    for _m in range(5):
        powers.append(cur)
        cur = (cur * QPoly.x(1)) % f2

    def coeff_form(k: int) -> List:
        """Quadric in u0,u1,u2: the e^k coefficient of alpha u^2."""
        out = []
        for (i, j) in U_MONOS3:
            val = powers[i + j][k]
            out.append(val if i == j else 2 * val)
        return out

    # x - e u3^2 = alpha u^2 with u = u0 + u1 e + u2 e^2:
    #   e^1 coefficient:  -u3^2 = (alpha u^2)_1
    #   e^2 coefficient:      0 = (alpha u^2)_2
    c1 = coeff_form(1)
    c2 = coeff_form(2)
    q1 = []
    q2 = []
    for (i, j) in U_MONOS4:
        if i < 3 and j < 3:
            q1.append(c1[U_MONOS3.index((i, j))])
            q2.append(c2[U_MONOS3.index((i, j))])
        elif i == 3 and j == 3:
            q1.append(Q1)
            q2.append(Q0)
        else:
            q1.append(Q0)
            q2.append(Q0)

    # conic via the trace form Tr(alpha u^2 / f2'(e))
    df = f2.deriv()
    g, s, _t = df.xgcd(f2)
    if g.degree != 0:
        raise PreconditionError("f2'(e) not invertible (f2 not squarefree)")
    inv_df = s.scale(1 / g[0]) % f2

    def trace_of(p: QPoly):
        # trace of multiplication by p in Q[e]/(f2)
        tot = Q0
        for t in range(3):
            col = (p * QPoly.x(t)) % f2
            tot += col[t]
        return tot

    conic = []
    for (i, j) in U_MONOS3:
        val = trace_of((powers[i + j] * inv_df) % f2)
        conic.append(val if i == j else 2 * val)
    eqs = TwoDescentEquations(q1, q2, conic)
    if not eqs.conic_in_pencil():
        raise PreconditionError("conic not in the quadric pencil (internal bug)")
    return eqs
