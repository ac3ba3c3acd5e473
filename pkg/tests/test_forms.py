import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charcoh.forms import (
    ETA0,
    ZETA,
    ZETA_BAR,
    DiffForm,
    FrameVector,
    J_apply,
    d,
    eta,
    eta_bar,
    form_weighted_degree,
    interior,
    letter_from_name,
    letter_name,
    mod_ideal,
    psi,
    tau,
)
from charcoh.jetring import GaussScalar, PotentialModel, parse_expr

from conftest import BETA, polys
from oracles import LETTERS, random_form

GENERIC = PotentialModel.generic()
BETA_M = PotentialModel.beta(BETA)
MODELS = [GENERIC, BETA_M, PotentialModel.rule(-1, 2)]


def L(a, c=1):
    return DiffForm.letter(a, c)


def test_structure_equations():
    assert d(L(ETA0), GENERIC) == L(ZETA).wedge(L(eta(1))) + L(ZETA_BAR).wedge(L(eta_bar(1)))
    # d eta_1 = -eta_2 ^ zeta + f_u eta_0 ^ zetab
    expected = -L(eta(2)).wedge(L(ZETA)) + L(ETA0, parse_expr("fu")).wedge(L(ZETA_BAR))
    assert d(L(eta(1)), GENERIC) == expected
    assert d(L(ZETA), GENERIC).is_zero()
    assert tau(1, GENERIC) == DiffForm(1, {(eta(1),): parse_expr("fu"), (ETA0,): parse_expr("F2*u0")})


def test_exterior_derivative_of_function():
    w = d(parse_expr("u0"), GENERIC)
    assert w == DiffForm(1, {(ZETA,): parse_expr("u1"), (ZETA_BAR,): parse_expr("-f"), (eta(1),): 1})


@pytest.mark.parametrize("m", MODELS, ids=["generic", "beta", "tzitzeica"])
@pytest.mark.parametrize("a", LETTERS + [eta(4), eta_bar(4)])
def test_d_squared_vanishes_on_letters(m, a):
    assert d(d(L(a), m), m).is_zero()


@settings(max_examples=40)
@given(polys())
def test_d_squared_vanishes_on_functions(F):
    assert d(d(F, GENERIC), GENERIC).is_zero()


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("degree", [1, 2])
def test_d_squared_vanishes_on_random_forms(seed, degree):
    w = random_form(random.Random(seed), degree)
    assert d(d(w, BETA_M), BETA_M).is_zero()


@pytest.mark.parametrize("seed", range(6))
def test_d_commutes_with_conjugation(seed):
    w = random_form(random.Random(100 + seed), 1)
    assert d(w.conjugate(), GENERIC) == d(w, GENERIC).conjugate()


@pytest.mark.parametrize("seed", range(6))
def test_leibniz_rule(seed):
    rng = random.Random(200 + seed)
    a, b = random_form(rng, 1), random_form(rng, 1)
    lhs = d(a.wedge(b), GENERIC)
    rhs = d(a, GENERIC).wedge(b) - a.wedge(d(b, GENERIC))
    assert lhs == rhs


@given(st.sampled_from(LETTERS), st.sampled_from(LETTERS))
def test_wedge_anticommutes(a, b):
    assert L(a).wedge(L(b)) == -L(b).wedge(L(a))


@pytest.mark.parametrize("seed", range(6))
def test_interior_is_antiderivation(seed):
    rng = random.Random(300 + seed)
    a, b = random_form(rng, 1), random_form(rng, 2)
    v = FrameVector({x: parse_expr(f"u{k % 3} + {k}") for k, x in enumerate(LETTERS)})
    lhs = interior(v, a.wedge(b))
    rhs = interior(v, a).wedge(b) - a.wedge(interior(v, b))
    assert lhs == rhs


def test_J_and_psi():
    w = DiffForm(1, {(ZETA,): 1, (ZETA_BAR,): 1, (ETA0,): 1, (eta(2),): 1, (eta_bar(2),): 1})
    i = GaussScalar(0, 1)
    assert J_apply(w) == DiffForm(
        1, {(ZETA,): i, (ZETA_BAR,): -i, (ETA0,): 1, (eta(2),): i, (eta_bar(2),): -i}
    )
    assert psi() == psi().conjugate()
    with pytest.raises(ValueError):
        J_apply(psi())


def test_weighted_degree_preserved_by_d():
    F = parse_expr("u2 - 1/2*b*u0^3")
    assert form_weighted_degree(d(F, BETA_M)) == 3
    assert form_weighted_degree(psi()) == 0


def test_mod_ideal_drops_eta_words():
    w = L(ZETA).wedge(L(ZETA_BAR)) + L(ZETA).wedge(L(eta(1)))
    assert mod_ideal(w) == L(ZETA).wedge(L(ZETA_BAR))


def test_letter_names_roundtrip():
    for a in LETTERS:
        assert letter_from_name(letter_name(a)) == a


def test_form_json_and_render():
    w = L(ZETA, parse_expr("u1")).wedge(L(eta(1)))
    assert w.to_json_obj()[0]["word"] == ["zeta", "eta1"]
    assert "zeta^eta1" in w.render()
