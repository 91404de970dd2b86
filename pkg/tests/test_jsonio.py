"""Wire formats: round trips and schema shapes."""

import json

from threedescent.cubic import TernaryCubic
from threedescent.jsonio import (cubic_in, cubic_out, dumps, elem_out, field_out,
                                 matrices_in, matrix_out, poly_in, poly_out,
                                 rat_in, rat_out, relext_out,
                                 structure_constants_in, structure_constants_out,
                                 tensor_out)
from threedescent.qpoly import QPoly
from threedescent.rat import QQ


class TestScalars:
    def test_rat_forms(self):
        assert rat_out(QQ(-7, 3)) == "-7/3"
        assert rat_out(QQ(5)) == "5"
        assert rat_in("-7/3") == QQ(-7, 3)

    def test_poly_round_trip(self):
        p = QPoly([QQ(1, 2), 0, -3])
        assert poly_in(poly_out(p)) == p

    def test_field_schema(self):
        out = field_out(QPoly([-2, 0, 1]))
        assert out == {"poly": ["-2", "0", "1"]}


class TestCompound:
    def test_cubic_round_trip(self, cubics):
        f = cubics["126a3_F1"]
        data = cubic_out(f)
        assert data["monomial_order"].startswith("x3,x2y")
        assert cubic_in(json.loads(dumps(data))) == TernaryCubic(f.coeffs)

    def test_structure_constants_round_trip(self, alg681_ref):
        data = json.loads(dumps(structure_constants_out(alg681_ref)))
        alg2 = structure_constants_in(data)
        assert alg2.table == alg681_ref.table

    def test_tensor_schema(self, rho681):
        data = tensor_out(rho681.rho)
        assert len(data) == 6
        assert data[0] == "1"
        assert isinstance(data[5], list) and len(data[5]) == 6  # M-element

    def test_relext_schema(self, tower681):
        data = relext_out(tower681.M)
        assert data["base"]["poly"][-1] == "1"
        assert len(data["g"]) == 7  # monic sextic, constant term first

    def test_matrices_round_trip(self, ref_matrices681):
        data = [matrix_out(m) for m in ref_matrices681]
        back = matrices_in(data)
        assert back == ref_matrices681

    def test_dumps_deterministic(self, rho681):
        a = dumps({"rho": tensor_out(rho681.rho)})
        b = dumps({"rho": tensor_out(rho681.rho)})
        assert a == b
