"""JSON wire formats: rationals as "p/q" strings, polynomials as coefficient
lists (constant term first), and the problem/stage schemas of the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .cubic import MONOMIAL_ORDER, TernaryCubic
from .errors import PreconditionError
from .qpoly import QPoly
from .rat import QQ, rat_str


def rat_in(x) -> "QQ":
    return QQ(str(x))


def rat_out(x) -> str:
    return rat_str(x)


def poly_in(xs) -> QPoly:
    return QPoly([rat_in(x) for x in xs])


def poly_out(p: QPoly) -> List[str]:
    return [rat_out(c) for c in p.c]


def field_out(poly: QPoly) -> Dict:
    return {"poly": poly_out(poly)}


def elem_out(coords) -> Dict:
    return {"coords": [rat_out(c) for c in coords]}


def melem_out(z) -> List[List[str]]:
    return [[rat_out(c) for c in cf.coords()] for cf in z.c]


def tensor_out(t) -> List:
    return [rat_out(t.c1),
            [rat_out(c) for c in t.c2.coords()],
            [rat_out(c) for c in t.c3.coords()],
            [rat_out(c) for c in t.c4.coords()],
            [rat_out(c) for c in t.c5.coords()],
            melem_out(t.c6)]


def relext_out(m) -> Dict:
    """{"base": field, "g": [coefficient coords, constant term first]}."""
    return {"base": field_out(m.base.poly),
            "g": [[rat_out(c) for c in cf.coords()] for cf in m.g]}


def matrix_out(m) -> List[List[str]]:
    return [[rat_out(x) for x in row] for row in m]


def matrices_in(data) -> List[List[List["QQ"]]]:
    return [[[rat_in(x) for x in row] for row in m] for m in data]


def structure_constants_out(alg) -> Dict:
    return {"dim": alg.dim,
            "table": [[[rat_out(x) for x in cell] for cell in row]
                      for row in alg.table]}


def structure_constants_in(data):
    from .csa import StructureAlgebra
    return StructureAlgebra(int(data["dim"]),
                            [[[rat_in(x) for x in cell] for cell in row]
                             for row in data["table"]])


def cubic_out(c: TernaryCubic, invariants: bool = True) -> Dict:
    out = {"coeffs": [rat_out(x) for x in c.coeffs],
           "monomial_order": MONOMIAL_ORDER}
    if invariants:
        c4, c6, disc, j = c.invariants()
        out["invariants"] = {"c4": rat_out(c4), "c6": rat_out(c6),
                             "disc": rat_out(disc),
                             "j": None if j is None else rat_out(j)}
    return out


def cubic_in(data) -> TernaryCubic:
    return TernaryCubic.from_coeffs([rat_in(x) for x in data["coeffs"]])


@dataclass
class DescentProblem:
    a4: "QQ"
    a6: "QQ"
    tower: Optional[Dict]          # {"f": [...], "x_T": [...], "y_T": [...]} or None for auto
    alpha_coords: List             # coords of the L-part of alpha
    overrides: Dict = field(default_factory=dict)

    @staticmethod
    def from_dict(data: Dict) -> "DescentProblem":
        curve = data["curve"]
        if "ainvs" in curve:
            a1, a2, a3, a4, a6 = [rat_in(x) for x in curve["ainvs"]]
            b2 = a1 * a1 + 4 * a2
            b4 = 2 * a4 + a1 * a3
            b6 = a3 * a3 + 4 * a6
            c4 = b2 * b2 - 24 * b4
            c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
            sa4, sa6 = -27 * c4, -54 * c6
        else:
            sa4, sa6 = rat_in(curve["a4"]), rat_in(curve["a6"])
            a1 = a3 = b2 = None
        tower = data.get("tower", "auto")
        tdata = None
        if tower != "auto":
            f = poly_in(tower["f"])
            x_t = poly_in(tower["x_T"])
            y_t = poly_in(tower["y_T"])
            if tower.get("point_model", "short") == "minimal":
                if b2 is None:
                    raise PreconditionError(
                        "point_model=minimal needs the long Weierstrass curve")
                x_t, y_t = (x_t.scale(36) + QPoly([3 * b2]),
                            y_t.scale(216) + (x_t * a1).scale(108) + QPoly([108 * a3]))
            tdata = {"f": f, "x_T": x_t, "y_T": y_t}
        alpha = [rat_in(x) for x in data["alpha"]["coords"]]
        overrides = {}
        ov = data.get("overrides") or {}
        if "basis_L" in ov:
            overrides["basis_L"] = [[rat_in(x) for x in v] for v in ov["basis_L"]]
        if "trivialization" in ov:
            overrides["trivialization"] = matrices_in(ov["trivialization"])
        if "weil_sign" in ov:
            overrides["weil_sign"] = int(ov["weil_sign"])
        return DescentProblem(sa4, sa6, tdata, alpha, overrides)


def load_json(path: str) -> Dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(path: str, data: Dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def dumps(data: Dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True)
