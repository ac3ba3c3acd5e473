import random

import pytest
import sympy as sp

from charcoh.conslaw import (
    Q,
    NotInKernel,
    b_coeffs,
    build_phi,
    build_varphi,
    classical_laws,
    classical_phi0,
    classify,
    contraction_piece,
    explicit_piece,
    kernel_of_ebar,
    solve_vd,
    vd_basis,
)
from charcoh.forms import form_weighted_degree, mod_ideal
from charcoh.jetring import DiffPoly, GaussScalar, PotentialModel, parse_expr, weighted_degree
from charcoh.operators import E_op
from charcoh.verify import GOLDEN, TZITZEICA_V5

from conftest import BETA

MB = PotentialModel.beta(BETA)
GENERIC = PotentialModel.generic()
TZ = PotentialModel.rule(-1, 2)
TZITZEICA_V7 = (
    "u6 + 7*u4*u1 - 7*u4*u0^2 + 14*u3*u2 - 28*u3*u1*u0 - 21*u2^2*u0"
    " - 28*u2*u1^2 - 14*u2*u1*u0^2 + 14*u2*u0^4 - 28/3*u1^3*u0 + 28*u1^2*u0^3 - 4/3*u0^7"
)


@pytest.mark.parametrize("d", range(1, 10))
def test_basis_size_is_partition_count(d):
    assert len(vd_basis(d).monomials) == int(sp.partition(d))
    assert all(weighted_degree(p) == d for p in vd_basis(d).polys())


@pytest.mark.parametrize("d", sorted(GOLDEN))
def test_golden_generators(d):
    sol = solve_vd(d, MB)
    assert sol.kernel == (parse_expr(GOLDEN[d]),)


def test_tzitzeica_generators():
    assert solve_vd(5, TZ).kernel == (parse_expr(TZITZEICA_V5),)
    assert solve_vd(7, TZ).kernel == (parse_expr(TZITZEICA_V7),)


@pytest.mark.parametrize("d", range(1, 10))
def test_dimension_table_beta(d):
    assert solve_vd(d, MB).dim == d % 2


@pytest.mark.parametrize("d", range(2, 7))
def test_generic_has_no_higher_laws(d):
    assert solve_vd(d, GENERIC).dim == 0


def test_degree_one_and_zero():
    assert solve_vd(1, GENERIC).kernel == (parse_expr("u0"),)
    assert solve_vd(0, MB).kernel == (Q,)
    assert solve_vd(-3, MB).kernel == (parse_expr(GOLDEN[3]).conjugate(),)


@pytest.mark.parametrize("seed", range(4))
def test_kernel_independent_of_column_order(seed):
    basis = list(vd_basis(5).monomials)
    random.Random(seed).shuffle(basis)
    assert solve_vd(5, MB, basis_order=basis).kernel == solve_vd(5, MB).kernel


def test_solution_json():
    obj = solve_vd(3, MB).to_json_obj()
    assert obj["dim"] == 1
    assert obj["generators_text"] == ["u2 - (1/2)*b*u0^3"]


@pytest.mark.parametrize("d", range(1, 6))
def test_ebar_kernel_empty(d):
    assert kernel_of_ebar(d, MB) == []


# -- normal form ------------------------------------------------------------------


def test_b_coefficients_of_p3():
    P = solve_vd(3, MB).kernel[0]
    assert b_coeffs(P, 3, MB) == {(1, 2): DiffPoly.const(GaussScalar(0, 1))}


@pytest.mark.parametrize("d", [5, 7])
def test_b_coefficients_weights(d):
    P = solve_vd(d, MB).kernel[0]
    for (i, j), b in b_coeffs(P, d, MB).items():
        assert b.is_zero() or weighted_degree(b) == d - i - j
        if i + j == d:
            assert b == DiffPoly.const(GaussScalar(0, (-1) ** (i + 1)))


@pytest.mark.parametrize("d", [1, 3, 5, 7])
def test_closure_and_primitive(d):
    P = solve_vd(d, MB).kernel[0]
    law = build_phi(P, d, MB)
    assert law.closed and law.level == d - 1
    assert form_weighted_degree(law.Phi) == d
    und = build_varphi(P, d, MB)
    assert und.ok
    assert und.varphi == und.varphi.conjugate()


def test_tzitzeica_closure():
    P = solve_vd(5, TZ).kernel[0]
    assert build_phi(P, 5, TZ).closed
    assert build_varphi(P, 5, TZ).ok


@pytest.mark.parametrize("d", [1, 3, 5])
def test_contraction_matches_explicit_formula(d):
    P = solve_vd(d, MB).kernel[0]
    assert mod_ideal(contraction_piece(P, d, MB) - explicit_piece(P, d, MB)).is_zero()


def test_classical_laws():
    assert classical_laws(1, 0, MB).Phi == build_phi(parse_expr("u0"), 1, MB).Phi_real
    assert classical_laws(0, 1, MB).closed
    assert classical_laws(2, 3, GENERIC).closed
    assert classical_laws(0, 0, GENERIC).Phi.is_zero()
    with pytest.raises(ValueError):
        classical_laws(0, GaussScalar(0, 1), GENERIC)


def test_phi0_primitive():
    law = classical_phi0(GENERIC)
    assert law.ok
    assert law.varphi == law.varphi.conjugate()
    assert form_weighted_degree(law.varphi) == 0


def test_build_phi_rejects_non_solutions():
    with pytest.raises(NotInKernel):
        build_phi(parse_expr("u1"), 2, MB)
    with pytest.raises(ValueError, match="homogeneous"):
        build_phi(parse_expr("u0 + u1"), 1, MB)
    with pytest.raises(ValueError, match="z or zb"):
        build_phi(Q, 0, MB)
    with pytest.raises(ValueError):
        build_varphi(parse_expr("u0"), 0, MB)


# -- classification ---------------------------------------------------------------


def test_classify_three():
    rep = classify(3)
    assert [c.text for c in rep.conditions] == ["l1 = 0"]
    assert all(c.verified for c in rep.conditions)


def test_classify_five():
    rep = classify(5)
    assert [c.text for c in rep.conditions] == ["l1 = 0", "l2 - 2*l1^2 = 0"]
    for c in rep.conditions:
        assert c.verified and c.witness is not None


def test_tzitzeica_family_has_degree_five_law():
    # any l1 works once l2 = 2*l1^2
    m = PotentialModel.rule(BETA, 2 * BETA * BETA)
    (P,) = solve_vd(5, m).kernel
    assert not E_op(P, m)


@pytest.mark.parametrize("d", [2, 4, 9])
def test_classify_rejects_unsupported_degrees(d):
    with pytest.raises(ValueError):
        classify(d)
