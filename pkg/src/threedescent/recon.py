"""Lattice reconstruction of exact coordinates from complex approximations.

Given high-precision values of a target and of a Q-basis under one fixed
embedding, an integer relation q*target = sum n_i * basis_i is searched with
LLL; candidates are only ever accepted by the caller after exact symbolic
verification, so the numerics here need to be good, not certified.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from mpmath import ldexp, mpf

from .errors import FormNotPositiveDefinite
from .lll import lll_int_rows
from .rat import QQ


def _scaled_int(x, scale_bits: int) -> int:
    # ldexp is an exact power-of-two scaling, independent of mp context;
    # avoid mpf(x) on mpf input, which rounds to the ambient precision
    if not hasattr(x, "_mpf_"):
        x = mpf(x)
    return int(ldexp(x, scale_bits))


def relation_candidates(target, basis_values: Sequence, scale_bits: int,
                        max_candidates: int = 8) -> List[List]:
    """Candidate rational coordinate vectors c with target ~ sum c_i b_i.

    Rows of the relation lattice: [e_i | 2^s Re(x_i) | 2^s Im(x_i)] for
    x_0 = target and x_i = basis_values[i-1]; a short vector with nonzero
    first coefficient encodes a candidate relation.
    """
    m = len(basis_values)
    rows = []
    vals = [target] + list(basis_values)
    for i, v in enumerate(vals):
        e = [0] * (m + 1)
        e[i] = 1
        rows.append(e + [_scaled_int(v.real, scale_bits), _scaled_int(v.imag, scale_bits)])
    try:
        red, _ = lll_int_rows(rows)
    except FormNotPositiveDefinite:
        return []
    out = []
    for row in red:
        q = row[0]
        if q == 0:
            continue
        coords = [QQ(-row[1 + i], q) for i in range(m)]
        out.append(coords)
        if len(out) >= max_candidates:
            break
    return out


def reconstruct(target, basis_values: Sequence, verify, precisions=(256, 512, 1024, 2048, 4096, 8192),
                embed=None) -> Optional[List]:
    """Adaptive-precision reconstruction.

    `verify(coords) -> bool` must check the candidate exactly.  `embed(prec)`
    may recompute (target, basis_values) at higher working precision; when
    omitted the supplied values are reused and only the lattice scale grows.
    """
    for prec in precisions:
        t, bv = (target, basis_values) if embed is None else embed(prec)
        for coords in relation_candidates(t, bv, prec):
            if verify(coords):
                return coords
    return None
