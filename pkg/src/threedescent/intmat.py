"""Exact integer matrix tools: HNF (with unimodular transform), kernels, SNF.

HNF convention (the one used everywhere in the package): row-style,
upper-triangular in echelon shape, positive pivots, entries above each
pivot reduced into [0, pivot).  U @ A = H with |det U| = 1.
"""

from __future__ import annotations

from typing import List, Tuple

Mat = List[List[int]]


def _ident(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hnf_row(a: Mat) -> Tuple[Mat, Mat]:
    """Hermite normal form by row operations.

    Returns (H, U) with U unimodular, U @ a == H.  Zero rows sink to the
    bottom.  Column order is left to right; pivot rows are reduced upward.
    """
    h = [[int(x) for x in row] for row in a]
    n = len(h)
    m = len(h[0]) if h else 0
    u = _ident(n)
    row = 0
    for col in range(m):
        # find a nonzero entry at/below `row`, make it the pivot via gcd steps
        piv = None
        for i in range(row, n):
            if h[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        h[row], h[piv] = h[piv], h[row]
        u[row], u[piv] = u[piv], u[row]
        # euclidean elimination below the pivot
        while True:
            nz = [i for i in range(row + 1, n) if h[i][col] != 0]
            if not nz:
                break
            # use the smallest nonzero |entry| as pivot to shrink the rest
            best = min(nz + [row], key=lambda i: abs(h[i][col]) if h[i][col] else 1 << 300)
            if h[best][col] == 0:
                best = row
            if best != row:
                h[row], h[best] = h[best], h[row]
                u[row], u[best] = u[best], u[row]
            p = h[row][col]
            for i in range(row + 1, n):
                if h[i][col] != 0:
                    q = h[i][col] // p
                    if q:
                        h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[row])]
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        p = h[row][col]
        for i in range(row):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[row])]
        row += 1
        if row == n:
            break
    return h, u


def hnf(a: Mat) -> Tuple[Mat, Mat]:
    """Alias for hnf_row (the package-wide HNF convention)."""
    return hnf_row(a)


def hnf_basis(a: Mat) -> Mat:
    """Nonzero rows of the HNF: canonical basis of the row lattice."""
    h, _ = hnf_row(a)
    return [row for row in h if any(x != 0 for x in row)]


def kernel_int(a: Mat) -> Mat:
    """Basis (rows) of the left kernel lattice {v in Z^n : v @ a = 0}."""
    n = len(a)
    if n == 0:
        return []
    h, u = hnf_row(a)
    return [u[i] for i in range(n) if all(x == 0 for x in h[i])]


def right_kernel_int(a: Mat) -> Mat:
    """Basis (as rows) of {v in Z^m : a @ v = 0}."""
    at = [list(col) for col in zip(*a)] if a else []
    return kernel_int(at)


def solve_mod_lattice(w: Mat, d: int) -> Mat:
    """Basis of the lattice {y in Z^k : y @ w ≡ 0 (mod d)}.

    Used for rings of multipliers: stack w over d*I and project the left
    kernel onto the y-part.
    """
    k = len(w)
    m = len(w[0]) if w else 0
    big = [list(w[i]) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    big += [[d if j == i else 0 for j in range(m)] + [0] * k for i in range(m)]
    # rows (y | e) with y@w + d*z = 0 tracked through HNF of the first block
    h, u = hnf_row([row[:m] for row in big])
    out = []
    for i in range(len(big)):
        if all(x == 0 for x in h[i]):
            comb = u[i]
            y = [sum(comb[t] * big[t][m + j] for t in range(len(big))) for j in range(k)]
            out.append(y)
    basis = hnf_basis(out)
    assert len(basis) == k, "congruence solution lattice must have full rank"
    return basis


def snf_diagonal(a: Mat) -> List[int]:
    """Diagonal of the Smith normal form (nonnegative, divisibility chain)."""
    m = [[int(x) for x in row] for row in a]
    n = len(m)
    k = len(m[0]) if m else 0
    diag = []
    top = 0
    while top < min(n, k):
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(top, n):
            for j in range(top, k):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        p = m[top][top]
        dirty = False
        for i in range(top + 1, n):
            q = m[i][top] // p
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[top])]
            if m[i][top] != 0:
                dirty = True
        for j in range(top + 1, k):
            q = m[top][j] // p
            if q:
                for row in m:
                    row[j] -= q * row[top]
            if m[top][j] != 0:
                dirty = True
        if dirty:
            continue
        # enforce divisibility: fold any entry not divisible by p into the pivot
        bad = None
        for i in range(top + 1, n):
            for j in range(top + 1, k):
                if m[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            m[top] = [x + y for x, y in zip(m[top], m[bad])]
            continue
        diag.append(abs(p))
        top += 1
    return diag


def count_solutions_mod(a: Mat, n_mod: int, unknowns: int) -> int:
    """#{x in (Z/n)^unknowns : a @ x ≡ 0 mod n} via SNF invariants."""
    from math import gcd
    if not a:
        return n_mod ** unknowns
    d = snf_diagonal(a)
    count = 1
    for di in d:
        count *= gcd(di, n_mod) if di != 0 else n_mod
    count *= n_mod ** (unknowns - len(d))
    return count
