"""Full-rank Z-lattices in Q^n with exact operations.

A lattice is a list of rational basis rows in some fixed ambient
coordinate system; the canonical form is the HNF of the scaled integer
matrix, rescaled back.  Algebra-aware operations (products, multiplier
rings) take the multiplication as a callback on coordinate vectors.
"""

from __future__ import annotations

from typing import Callable, List, Sequence

from .intmat import hnf_basis, solve_mod_lattice
from .qmat import det, inverse, mat, mat_mul
from .rat import QQ, Q0, lcm_list

Rows = List[List]


def canonical(rows: Rows) -> Rows:
    """Canonical HNF basis of the lattice generated by `rows` (any count)."""
    rows = [[QQ(x) for x in r] for r in rows if any(QQ(x) != 0 for x in r)]
    if not rows:
        return []
    d = lcm_list([x.denominator for r in rows for x in r])
    h = hnf_basis([[int(x * d) for x in r] for r in rows])
    return [[QQ(x, d) for x in r] for r in h]


def lat_eq(a: Rows, b: Rows) -> bool:
    return canonical(a) == canonical(b)


def lat_det(rows: Rows):
    return det(mat(rows))


def contains(rows: Rows, v: Sequence) -> bool:
    """Is v in the lattice (integer coordinates w.r.t. the basis)?"""
    binv = inverse(mat(rows))
    coords = [sum((QQ(v[t]) * binv[t][j] for t in range(len(v))), Q0)
              for j in range(len(rows))]
    return all(c.denominator == 1 for c in coords)


def coords_in(rows: Rows, v: Sequence) -> List:
    binv = inverse(mat(rows))
    return [sum((QQ(v[t]) * binv[t][j] for t in range(len(v))), Q0)
            for j in range(len(rows))]


def lat_sum(a: Rows, b: Rows) -> Rows:
    return canonical(list(a) + list(b))


def lat_scale(rows: Rows, s) -> Rows:
    s = QQ(s)
    return [[x * s for x in r] for r in rows]


def lat_product(a: Rows, b: Rows, mult: Callable) -> Rows:
    """Lattice generated by pairwise products under `mult`."""
    gens = []
    for x in a:
        for y in b:
            gens.append(mult(x, y))
    return canonical(gens)


def lat_index(sub: Rows, sup: Rows):
    """[sup : sub] = |det sub| / |det sup| (sub contained in sup)."""
    return abs(lat_det(sub) / lat_det(sup))


def sublattice_with_condition(container: Rows, cond_mats: Sequence, target: Rows) -> Rows:
    """{x in L(container) : x @ M in L(target) for every M in cond_mats}.

    Returns a canonical basis.  Everything is exact; the congruence system
    is solved over Z via HNF.
    """
    n = len(container)
    bc = mat(container)
    bt_inv = inverse(mat(target))
    blocks = []
    for m in cond_mats:
        blocks.append(mat_mul(mat_mul(bc, mat(m)), bt_inv))
    # condition on y in Z^n: y @ [blocks] integral
    u = [[blocks[k][i][j] for k in range(len(blocks)) for j in range(n)]
         for i in range(n)]
    dd = lcm_list([x.denominator for row in u for x in row] or [1])
    if dd == 1:
        return canonical(container)
    w = [[int(x * dd) for x in row] for row in u]
    y = solve_mod_lattice(w, dd)
    rows = [[sum((QQ(yv[t]) * bc[t][j] for t in range(n)), Q0)
             for j in range(len(container[0]))] for yv in y]
    return canonical(rows)
