import random

import pytest

from charcoh.conslaw import Q, build_phi, classical_laws, solve_vd
from charcoh.jetring import DiffPoly, PotentialModel, parse_expr
from charcoh.operators import E_op, e_minus1_pow
from charcoh.symmetry import (
    NoConservationLaw,
    NotASymmetry,
    lie_check,
    noether_pair,
    symmetry_from_generating,
    trivial_symmetry_check,
    vector_from_generating,
)

from conftest import BETA
from oracles import random_hol_poly

MB = PotentialModel.beta(BETA)
GENERIC = PotentialModel.generic()


def generators():
    return {
        "u0": parse_expr("u0"),
        "q": Q,
        "P3": solve_vd(3, MB).kernel[0],
        "P5": solve_vd(5, MB).kernel[0],
    }


@pytest.mark.parametrize("name", ["u0", "q", "P3", "P5"])
@pytest.mark.parametrize("i", range(4))
def test_symmetries_preserve_the_ideal(name, i):
    v = symmetry_from_generating(generators()[name], MB, 5)
    assert lie_check(v, i, MB).ok


@pytest.mark.parametrize("seed", range(10))
def test_residuals_of_non_solutions(seed):
    g = random_hol_poly(random.Random(seed))
    Eg = E_op(g, MB)
    assert Eg
    v = vector_from_generating(g, MB, 5)
    assert lie_check(v, 0, MB).zeta_bar.is_zero()
    for i in (1, 2, 3):
        res = lie_check(v, i, MB)
        assert res.zeta.is_zero()
        assert res.zeta_bar == e_minus1_pow(Eg, i - 1, MB)


def test_rejects_non_solution_and_shallow_depth():
    with pytest.raises(NotASymmetry):
        symmetry_from_generating(parse_expr("u1"), MB, 3)
    v = symmetry_from_generating(parse_expr("u0"), MB, 2)
    with pytest.raises(ValueError):
        lie_check(v, 1, MB)


def test_components():
    v = symmetry_from_generating(parse_expr("u0"), MB, 3)
    assert v.eta(0) == parse_expr("u0")
    assert v.eta(2) == parse_expr("u2")
    assert v.eta_bar(1) == parse_expr("-f")


@pytest.mark.parametrize("Qfun", ["1", "u0*ub1 + z"])
def test_trivial_symmetries(Qfun):
    assert trivial_symmetry_check(parse_expr(Qfun), GENERIC, 3)


def test_noether_is_identity_on_generating_functions():
    P = solve_vd(5, MB).kernel[0]
    assert noether_pair(P, 5, MB).P == P
    assert noether_pair(P, 5, MB).Phi == build_phi(P, 5, MB).Phi
    assert noether_pair(Q, 0, MB) == classical_laws(0, 1, MB)


def test_symmetry_without_law():
    # f itself solves E when f_uu = 0, but depends on u
    m = PotentialModel.rule(0, 0)
    g = parse_expr("f")
    assert not E_op(g, m)
    with pytest.raises(NoConservationLaw):
        noether_pair(g, 0, m)
    with pytest.raises(NotASymmetry):
        noether_pair(parse_expr("u1"), 2, MB)
