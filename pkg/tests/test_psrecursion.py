import logging

import pytest

from charcoh.conslaw import solve_vd
from charcoh.jetring import DiffPoly, PotentialModel, parse_expr
from charcoh.operators import e_minus1_pow
from charcoh.psrecursion import PSIdentityError, ps_chain, verify_ps
from charcoh.verify import GOLDEN

from conftest import BETA


@pytest.fixture(scope="module")
def chain():
    return ps_chain(4, BETA)


def test_chain_reproduces_golden_values(chain):
    assert chain.P[0] == parse_expr("u0")
    for i, d in enumerate((3, 5, 7), start=2):
        assert chain.P[i - 1] == parse_expr(GOLDEN[d])


def test_first_phi(chain):
    assert chain.phi[0] == parse_expr("u0^2")


@pytest.mark.parametrize("i", range(1, 5))
def test_identities_hold(chain, i):
    rep = verify_ps(i, chain, strict=True)
    assert rep.ok
    assert rep.to_json_obj()["ok"] is True


@pytest.mark.parametrize("i", range(1, 5))
def test_chain_matches_solver(chain, i):
    assert chain.P[i - 1] == solve_vd(2 * i - 1, chain.model).kernel[0]


def test_numeric_beta_is_a_specialization(chain):
    num = ps_chain(3, 1)
    b1 = {BETA.variables().pop(): DiffPoly.const(1)}
    assert num.P == [p.subs(b1) for p in chain.P[:3]]
    assert verify_ps(3, num).ok


def test_zero_beta_is_degenerate(caplog):
    with caplog.at_level(logging.WARNING):
        ch = ps_chain(3, 0)
    assert ch.degenerate
    assert "degenerate" in caplog.text
    u0 = parse_expr("u0")
    m = PotentialModel.beta(0)
    assert ch.P == [e_minus1_pow(u0, 2 * k, m) for k in range(3)]


def test_strict_failure_and_bounds(chain):
    broken = ps_chain(2, BETA)
    broken.P[1] = broken.P[1] + parse_expr("u0^3")
    assert not verify_ps(2, broken).ok
    with pytest.raises(PSIdentityError):
        verify_ps(2, broken, strict=True)
    with pytest.raises(IndexError):
        verify_ps(5, chain)
    with pytest.raises(ValueError):
        ps_chain(0, BETA)


def test_json_shape(chain):
    obj = chain.to_json_obj()
    assert [e["degree"] for e in obj["entries"]] == [1, 3, 5, 7]
