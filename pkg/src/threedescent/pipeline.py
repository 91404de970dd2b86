"""Orchestration of the full alpha-to-cubic run, with a stage report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from . import jsonio
from .csa import (OrderLattice, TrivializationResult, good_basis, gram_intrinsic,
                  maximal_order, obstruction_algebra, trivialize)
from .cubic import TernaryCubic
from .errors import NoCubicFound, PreconditionError
from .etale import EtaleElem, build_rho
from .factorint import factor_integer
from .jsonio import DescentProblem
from .orders import factor_principal_ideal, ring_of_integers
from .quadrics import (eliminate_z0, extract_cubic, substitute_trivialization,
                       type_I_II_quadrics)
from .rat import QQ, Q0, Q1, is_nth_power
from .tower import build_torsion_data, derive_tower


@dataclass
class CubicRunResult:
    split: bool
    report: Dict
    cubic: Optional[TernaryCubic] = None
    trivialization: Optional[TrivializationResult] = None


def run_cubic(problem: DescentProblem, seed: int = 0, precision: int = 256,
              weil_sign="auto", emit_stages: Optional[str] = None) -> CubicRunResult:
    report: Dict = {}

    def emit(name, data):
        report[name] = data
        if emit_stages:
            jsonio.dump_json(f"{emit_stages}/{name}.json", data)

    a4, a6 = problem.a4, problem.a6
    if problem.tower is not None:
        f, x_t, y_t = problem.tower["f"], problem.tower["x_T"], problem.tower["y_T"]
    else:
        f, x_t, y_t = build_torsion_data(a4, a6)
    tower = derive_tower(a4, a6, f, x_t, y_t)
    emit("tower", {
        "a4": jsonio.rat_out(a4), "a6": jsonio.rat_out(a6),
        "disc_E": jsonio.rat_out(tower.disc_E),
        "f": jsonio.poly_out(tower.L.poly),
        "x_T": jsonio.poly_out(tower.x_T.poly),
        "y_T": jsonio.poly_out(tower.y_T.poly),
        "lambda_T": jsonio.poly_out(tower.lambda_T.poly),
    })

    alpha = EtaleElem(1, tower.L.elem(list(problem.alpha_coords)))
    sign = problem.overrides.get("weil_sign")
    if weil_sign in (1, -1):
        sign = weil_sign
    rho_data = build_rho(alpha, tower, weil_sign=sign if sign in (1, -1) else 1)
    emit("rho", {
        "rho": jsonio.tensor_out(rho_data.rho),
        "epsilon_sixth_is_zeta3_power": rho_data.weil_sign,
        "cube_root_s": jsonio.elem_out(rho_data.cube_root_u.coords()),
    })

    o_l = ring_of_integers(tower.L)
    fact = factor_principal_ideal(alpha.l, 3, o_l)
    emit("ideal_factorization", {
        "norm_alpha": jsonio.rat_out(alpha.l.norm_to_Q()),
        "primes": [{"p": p.p, "norm": p.norm_int(), "exponent": v}
                   for p, v in fact.factors],
        "norm_b": jsonio.rat_out(fact.b_norm()),
    })

    basis = problem.overrides.get("basis_L")
    if basis is not None:
        basis_l = [tower.L.elem(list(v)) for v in basis]
    else:
        basis_l = good_basis(alpha, tower, fact, precision_bits=precision)
    emit("basis", {"basis_L": [jsonio.elem_out(b.coords()) for b in basis_l]})

    alg = obstruction_algebra(rho_data, tower, basis_l)
    start = OrderLattice(alg, [[Q1 if i == j else Q0 for j in range(9)]
                               for i in range(9)])
    disc0 = start.discriminant()
    emit("structure_constants", jsonio.structure_constants_out(alg)
         | {"order_discriminant": str(factor_integer(disc0))})

    triv_override = problem.overrides.get("trivialization")
    if triv_override is not None:
        triv = TrivializationResult(True, matrices=triv_override)
        if not triv.verify_structure(alg):
            raise PreconditionError("override trivialisation fails the "
                                    "structure-constant check")
        max_disc = None
    else:
        omax = maximal_order(alg, start)
        max_disc = omax.discriminant()
        if max_disc != 1:
            cert = factor_integer(max_disc)
            emit("trivialization", {"status": "nonsplit",
                                    "max_order_discriminant": str(cert)})
            return CubicRunResult(False, report,
                                  trivialization=TrivializationResult(
                                      False, max_order_disc=cert, max_order=omax))
        gram = gram_intrinsic(omax, rho_data, tower, basis_l,
                              precision_bits=precision)
        triv = trivialize(alg, seed=seed, intrinsic_gram=gram, start_order=start)
    emit("trivialization", {
        "status": "split",
        "matrices": [jsonio.matrix_out(m) for m in triv.matrices],
        "max_order_discriminant": "1" if max_disc is None else str(max_disc),
    })

    qs27 = type_I_II_quadrics(tower, rho_data, basis_l)
    qs18 = eliminate_z0(qs27)
    qs_mat, subst = substitute_trivialization(qs18, tower, basis_l, triv.matrices)
    emit("quadrics", {
        "dim27": qs27.dim(), "dim18": qs18.dim(),
        "substitution": jsonio.matrix_out(subst),
    })
    cubic, transposed = extract_cubic(qs_mat)
    c4, c6, disc, j = cubic.invariants()
    j_e = None
    disc_e = tower.disc_E
    j_e = QQ(-1728) * (4 * a4) ** 3 / disc_e
    ratio = disc / disc_e
    twelfth = is_nth_power(ratio, 12)
    emit("cubic", jsonio.cubic_out(cubic) | {
        "transposed": transposed,
        "j_matches_curve": j == j_e,
        "disc_ratio_is_12th_power": twelfth is not None,
    })
    if j != j_e:
        raise NoCubicFound("extracted cubic has wrong j-invariant")
    return CubicRunResult(True, report, cubic=cubic, trivialization=triv)
