"""Dense exact linear algebra over Q: rref, kernels, determinants, solving.

Matrices are lists of rows of mpq.  Determinants use fraction-free
Bareiss elimination to control coefficient growth.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .rat import QQ, Q0, Q1

Row = List
Mat = List[Row]


def mat(rows) -> Mat:
    return [[QQ(x) for x in r] for r in rows]


def zeros(n: int, m: int) -> Mat:
    return [[Q0 for _ in range(m)] for _ in range(n)]


def identity(n: int) -> Mat:
    return [[Q1 if i == j else Q0 for j in range(n)] for i in range(n)]


def copy(a: Mat) -> Mat:
    return [row[:] for row in a]


def transpose(a: Mat) -> Mat:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    bt = transpose(b)
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            bj = bt[j]
            s = Q0
            for t in range(k):
                if ai[t] != 0:
                    s += ai[t] * bj[t]
            out[i][j] = s
    return out


def mat_vec(a: Mat, v: Row) -> Row:
    return [sum((ai[t] * v[t] for t in range(len(v)) if v[t] != 0), Q0) for ai in a]


def vec_mat(v: Row, a: Mat) -> Row:
    m = len(a[0]) if a else 0
    out = [Q0] * m
    for t, vt in enumerate(v):
        if vt != 0:
            at = a[t]
            for j in range(m):
                out[j] += vt * at[j]
    return out


def scalar_mul(s, a: Mat) -> Mat:
    s = QQ(s)
    return [[s * x for x in row] for row in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a: Mat, b: Mat) -> bool:
    return a == b


def rref(a: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = copy(a)
    n = len(r)
    m = len(r[0]) if r else 0
    pivots = []
    row = 0
    for col in range(m):
        piv = None
        for i in range(row, n):
            if r[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = 1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(n):
            if i != row and r[i][col] != 0:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return r, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def right_kernel(a: Mat) -> List[Row]:
    """Basis of {v : a.v = 0}; count = cols - rank(a)."""
    if not a:
        return []
    m = len(a[0])
    r, pivots = rref(a)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for j in free:
        v = [Q0] * m
        v[j] = Q1
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][j]
        basis.append(v)
    return basis


def row_space_basis(a: Mat) -> Mat:
    r, pivots = rref(a)
    return [r[i] for i in range(len(pivots))]


def in_row_space(a: Mat, v: Row) -> bool:
    return rank(a) == rank(a + [v])


def solve(a: Mat, b: Row) -> Optional[Row]:
    """One solution of a.x = b, or None if inconsistent."""
    n = len(a)
    m = len(a[0]) if a else 0
    aug = [a[i][:] + [QQ(b[i])] for i in range(n)]
    r, pivots = rref(aug)
    if m in pivots:
        return None
    x = [Q0] * m
    for i, pc in enumerate(pivots):
        x[pc] = r[i][m]
    return x


def solve_matrix(a: Mat, b: Mat) -> Optional[Mat]:
    """X with a.X = b (columns solved independently), or None."""
    bt = transpose(b)
    cols = []
    for col in bt:
        x = solve(a, col)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix not invertible")
    return [r[i][n:] for i in range(n)]


def det(a: Mat):
    """Fraction-free Bareiss determinant."""
    n = len(a)
    if n == 0:
        return Q1
    m = copy(a)
    sign = 1
    prev = Q1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    piv = i
                    break
            if piv is None:
                return Q0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Q0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly_berkowitz(a: Mat) -> List:
    """Characteristic polynomial coefficients (ascending), division-free.

    Works over any commutative ring the entries live in; used both over Q
    and (with integer entries) reduced mod p by callers.
    """
    n = len(a)
    if n == 0:
        return [Q1]
    # Berkowitz: iteratively build the char poly via Toeplitz products.
    # vectors are coefficient lists, highest degree first, length r+1.
    c = [Q1, -a[0][0]]
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        sub = [a[i][:r] for i in range(r)]
        # s_k = row . sub^(k) . col for k = 0..r-1
        s = []
        v = col[:]
        for _ in range(r):
            s.append(sum((row[t] * v[t] for t in range(r)), Q0))
            v = [sum((sub[i][t] * v[t] for t in range(r)), Q0) for i in range(r)]
        toep = [Q1 * 1, -a[r][r]] + [-x for x in s]
        new = [Q0] * (r + 2)
        for i, ci in enumerate(c):
            for j, tj in enumerate(toep):
                if i + j <= r + 1:
                    new[i + j] += ci * tj
        c = new
    return list(reversed(c))
