import os

import pytest

from threedescent.etale import EtaleElem, build_rho
from threedescent.jsonio import DescentProblem, load_json, rat_in
from threedescent.orders import factor_principal_ideal, ring_of_integers
from threedescent.tower import derive_tower

PROBLEMS = os.path.join(os.path.dirname(__file__), "..", "problems")


def problem_path(name: str) -> str:
    return os.path.join(PROBLEMS, name)


@pytest.fixture(scope="session")
def prob681():
    return DescentProblem.from_dict(load_json(problem_path("681b1.json")))


@pytest.fixture(scope="session")
def overrides681():
    data = load_json(problem_path("681b1_overrides.json"))
    return data


@pytest.fixture(scope="session")
def prob1722():
    return DescentProblem.from_dict(load_json(problem_path("1722f1.json")))


@pytest.fixture(scope="session")
def tower681(prob681):
    t = prob681.tower
    return derive_tower(prob681.a4, prob681.a6, t["f"], t["x_T"], t["y_T"])


@pytest.fixture(scope="session")
def tower1722(prob1722):
    t = prob1722.tower
    return derive_tower(prob1722.a4, prob1722.a6, t["f"], t["x_T"], t["y_T"])


@pytest.fixture(scope="session")
def alpha681(prob681, tower681):
    return EtaleElem(1, tower681.L.elem(list(prob681.alpha_coords)))


@pytest.fixture(scope="session")
def alpha1722(prob1722, tower1722):
    return EtaleElem(1, tower1722.L.elem(list(prob1722.alpha_coords)))


@pytest.fixture(scope="session")
def rho681(alpha681, tower681):
    return build_rho(alpha681, tower681, weil_sign=1)


@pytest.fixture(scope="session")
def rho1722(alpha1722, tower1722):
    return build_rho(alpha1722, tower1722, weil_sign=1)


@pytest.fixture(scope="session")
def maxord681(tower681):
    return ring_of_integers(tower681.L)


@pytest.fixture(scope="session")
def maxord1722(tower1722):
    return ring_of_integers(tower1722.L)


@pytest.fixture(scope="session")
def fact681(alpha681, maxord681):
    return factor_principal_ideal(alpha681.l, 3, maxord681)


@pytest.fixture(scope="session")
def fact1722(alpha1722, maxord1722):
    return factor_principal_ideal(alpha1722.l, 3, maxord1722)


@pytest.fixture(scope="session")
def ref_basis681(overrides681, tower681):
    return [tower681.L.elem([rat_in(x) for x in v])
            for v in overrides681["basis_L"]]


@pytest.fixture(scope="session")
def ref_matrices681(overrides681):
    return [[[rat_in(x) for x in row] for row in m]
            for m in overrides681["trivialization"]]


@pytest.fixture(scope="session")
def goodbasis681(alpha681, tower681, fact681):
    from threedescent.csa import good_basis
    return good_basis(alpha681, tower681, fact681)


@pytest.fixture(scope="session")
def goodbasis1722(alpha1722, tower1722, fact1722):
    from threedescent.csa import good_basis
    return good_basis(alpha1722, tower1722, fact1722)


@pytest.fixture(scope="session")
def alg681_ref(rho681, tower681, ref_basis681):
    from threedescent.csa import obstruction_algebra
    return obstruction_algebra(rho681, tower681, ref_basis681)


@pytest.fixture(scope="session")
def alg681_auto(rho681, tower681, goodbasis681):
    from threedescent.csa import obstruction_algebra
    return obstruction_algebra(rho681, tower681, goodbasis681)


@pytest.fixture(scope="session")
def alg1722_auto(rho1722, tower1722, goodbasis1722):
    from threedescent.csa import obstruction_algebra
    return obstruction_algebra(rho1722, tower1722, goodbasis1722)


@pytest.fixture(scope="session")
def cubics():
    data = load_json(problem_path("cubics.json"))
    from threedescent.cubic import TernaryCubic
    return {k: TernaryCubic.from_coeffs([rat_in(x) for x in v])
            for k, v in data.items()}


@pytest.fixture(scope="session")
def triv681_auto(alg681_auto, rho681, tower681, goodbasis681):
    from threedescent.csa import (OrderLattice, gram_intrinsic, maximal_order,
                                  trivialize)
    from threedescent.rat import Q0, Q1
    start = OrderLattice(alg681_auto,
                         [[Q1 if i == j else Q0 for j in range(9)]
                          for i in range(9)])
    omax = maximal_order(alg681_auto, start)
    gram = gram_intrinsic(omax, rho681, tower681, goodbasis681)
    return trivialize(alg681_auto, intrinsic_gram=gram, start_order=start)
