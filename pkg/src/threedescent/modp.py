"""Linear and polynomial algebra over F_p (p prime), plain ints mod p."""

from __future__ import annotations

from typing import List, Optional, Tuple

Mat = List[List[int]]


def mat_mod(a, p: int) -> Mat:
    return [[int(x) % p for x in row] for row in a]


def mul_mod(a: Mat, b: Mat, p: int) -> Mat:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    bt = list(zip(*b))
    return [[sum(ai[t] * bt_j[t] for t in range(k)) % p for bt_j in bt] for ai in a]


def mat_pow_mod(a: Mat, e: int, p: int) -> Mat:
    n = len(a)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [row[:] for row in a]
    while e:
        if e & 1:
            out = mul_mod(out, base, p)
        base = mul_mod(base, base, p)
        e >>= 1
    return out


def rref_mod(a: Mat, p: int) -> Tuple[Mat, List[int]]:
    r = [[x % p for x in row] for row in a]
    n = len(r)
    m = len(r[0]) if r else 0
    pivots = []
    row = 0
    for col in range(m):
        piv = next((i for i in range(row, n) if r[i][col] % p), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = pow(r[row][col], -1, p)
        r[row] = [x * inv % p for x in r[row]]
        for i in range(n):
            if i != row and r[i][col]:
                f = r[i][col]
                r[i] = [(x - f * y) % p for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return r, pivots


def kernel_mod(a: Mat, p: int) -> List[List[int]]:
    """Right kernel basis of a over F_p."""
    if not a:
        return []
    m = len(a[0])
    r, pivots = rref_mod(a, p)
    free = [j for j in range(m) if j not in pivots]
    out = []
    for j in free:
        v = [0] * m
        v[j] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-r[i][j]) % p
        out.append(v)
    return out


def solve_mod(a: Mat, b: List[int], p: int) -> Optional[List[int]]:
    n = len(a)
    m = len(a[0]) if a else 0
    aug = [a[i][:] + [b[i] % p] for i in range(n)]
    r, pivots = rref_mod(aug, p)
    if m in pivots:
        return None
    x = [0] * m
    for i, pc in enumerate(pivots):
        x[pc] = r[i][m]
    return x


def charpoly_mod(a: Mat, p: int) -> List[int]:
    """Characteristic polynomial mod p, ascending coefficients (Berkowitz)."""
    n = len(a)
    if n == 0:
        return [1]
    c = [1, (-a[0][0]) % p]
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        sub = [a[i][:r] for i in range(r)]
        s = []
        v = col[:]
        for _ in range(r):
            s.append(sum(row[t] * v[t] for t in range(r)) % p)
            v = [sum(sub[i][t] * v[t] for t in range(r)) % p for i in range(r)]
        toep = [1, (-a[r][r]) % p] + [(-x) % p for x in s]
        new = [0] * (r + 2)
        for i, ci in enumerate(c):
            if ci == 0:
                continue
            for j, tj in enumerate(toep):
                if i + j <= r + 1:
                    new[i + j] = (new[i + j] + ci * tj) % p
        c = new
    return list(reversed([x % p for x in c]))


def factor_poly_mod(coeffs_asc: List[int], p: int) -> List[Tuple[List[int], int]]:
    """Monic irreducible factors (ascending coeff lists) with multiplicity."""
    import sympy
    x = sympy.Symbol("x")
    expr = sum(int(c) * x ** i for i, c in enumerate(coeffs_asc))
    poly = sympy.Poly(expr, x, modulus=p)
    out = []
    for f, e in poly.factor_list()[1]:
        cs = [int(c) % p for c in reversed(f.all_coeffs())]
        lead = cs[-1]
        if lead != 1:
            inv = pow(lead, -1, p)
            cs = [c * inv % p for c in cs]
        out.append((cs, int(e)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def ptrim(a: List[int], p: int) -> List[int]:
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(a: List[int], b: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return ptrim(out, p)


def pdivmod(a: List[int], b: List[int], p: int):
    a = ptrim(a, p)
    b = ptrim(b, p)
    if not b:
        raise ZeroDivisionError("poly division by zero mod p")
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    r = a[:]
    while len(r) >= len(b):
        k = len(r) - len(b)
        t = r[-1] * inv % p
        q[k] = t
        for i, bi in enumerate(b):
            r[k + i] = (r[k + i] - t * bi) % p
        r = ptrim(r, p)
    return ptrim(q, p), r


def pxgcd(a: List[int], b: List[int], p: int):
    """(g, s, t) monic g = gcd, s*a + t*b = g, all mod p."""
    r0, r1 = ptrim(a, p), ptrim(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return ([x * inv % p for x in r0], [x * inv % p for x in s0],
            [x * inv % p for x in t0])


def psub(a: List[int], b: List[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    return ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)], p)


def poly_eval_matrix_mod(coeffs_asc: List[int], m: Mat, p: int) -> Mat:
    n = len(m)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(coeffs_asc):
        acc = mul_mod(acc, m, p)
        for i in range(n):
            acc[i][i] = (acc[i][i] + c) % p
    return acc
