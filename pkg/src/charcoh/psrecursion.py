"""Pinkall-Sterling recursion for the odd-degree generators when ``f_uu = beta f``.

    P_1 = u_0
    phi_i = P_l^2 + 2 sum_{j<l} theta(j, i-j)                 i = 2l - 1
    phi_i = P_{l+1} P_l + theta(l, l) + 2 sum_{j<l} theta(j, i-j)   i = 2l
    theta(l, m) = P_l P_{m+1} - e(P_l) e(P_m) + beta/4 phi_l phi_m
    P_{i+1} = e(e(P_i)) - beta/2 u_0 phi_i

Entries are indexed by position: ``wd(P_i) = 2i - 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .jetring import DiffPoly, FTower, GaussScalar, PotentialModel, Uj, poly, render, to_json_obj
from .jetring.poly import PolyLike
from .operators import e_minus1, e_minus1_bar

log = logging.getLogger(__name__)


class PSIdentityError(AssertionError):
    pass


@dataclass
class PSChain:
    beta: DiffPoly
    P: list[DiffPoly] = field(default_factory=list)
    phi: list[DiffPoly] = field(default_factory=list)
    theta: dict[tuple[int, int], DiffPoly] = field(default_factory=dict)

    @property
    def model(self) -> PotentialModel:
        return PotentialModel.beta(self.beta)

    @property
    def degenerate(self) -> bool:
        """``beta = 0``: the chain collapses to even powers of ``e_{-1}`` applied to ``u_0``."""
        return not self.beta

    def __len__(self) -> int:
        return len(self.P)

    def entry(self, i: int) -> tuple[DiffPoly, DiffPoly]:
        """``(P_i, phi_i)``, 1-based."""
        return self.P[i - 1], self.phi[i - 1]

    def to_json_obj(self) -> dict:
        return {
            "beta": to_json_obj(self.beta),
            "entries": [
                {
                    "index": i,
                    "degree": 2 * i - 1,
                    "P": to_json_obj(p),
                    "P_text": render(p),
                    "phi": to_json_obj(ph),
                }
                for i, (p, ph) in enumerate(zip(self.P, self.phi), start=1)
            ],
        }


def ps_chain(n: int, beta: PolyLike) -> PSChain:
    if n < 1:
        raise ValueError("ps_chain needs n >= 1")
    beta = poly(beta)
    if not beta:
        log.warning("beta = 0 lies outside the recursion's hypotheses; chain is degenerate")
    m = PotentialModel.beta(beta)
    quarter = beta * (GaussScalar(1, 0) / 4)
    half = beta * (GaussScalar(1, 0) / 2)
    u0 = DiffPoly.var(Uj(0))
    ch = PSChain(beta)
    P = {1: u0}
    phi: dict[int, DiffPoly] = {}
    eP: dict[int, DiffPoly] = {}

    def e_of(k: int) -> DiffPoly:
        if k not in eP:
            eP[k] = e_minus1(P[k], m)
        return eP[k]

    def theta(a: int, b: int) -> DiffPoly:
        key = (a, b)
        if key not in ch.theta:
            ch.theta[key] = P[a] * P[b + 1] - e_of(a) * e_of(b) + quarter * phi[a] * phi[b]
        return ch.theta[key]

    for i in range(1, n + 1):
        l, odd = (i + 1) // 2, i % 2 == 1
        acc = DiffPoly()
        for j in range(1, l):
            acc = acc + theta(j, i - j)
        acc = acc * 2
        if odd:
            phi[i] = P[l] * P[l] + acc
        else:
            phi[i] = P[l + 1] * P[l] + theta(l, l) + acc
        if i < n:
            P[i + 1] = e_minus1(e_of(i), m) - half * u0 * phi[i]
    ch.P = [P[k] for k in range(1, n + 1)]
    ch.phi = [phi[k] for k in range(1, n + 1)]
    return ch


@dataclass(frozen=True)
class PSReport:
    index: int
    e_phi: DiffPoly
    ebar_phi: DiffPoly
    linearized: DiffPoly

    @property
    def ok(self) -> bool:
        return not (self.e_phi or self.ebar_phi or self.linearized)

    def to_json_obj(self) -> dict:
        return {
            "index": self.index,
            "e_phi_identity": not self.e_phi,
            "ebar_phi_identity": not self.ebar_phi,
            "linearized_identity": not self.linearized,
            "ok": self.ok,
        }


def verify_ps(i: int, chain: PSChain, strict: bool = False) -> PSReport:
    """Residuals of ``e phi = 2 u0 e P``, ``ebar phi = -2 f P`` and ``ebar e P = -f_u P``."""
    if not 1 <= i <= len(chain):
        raise IndexError(f"chain has entries 1..{len(chain)}")
    m = chain.model
    P, ph = chain.entry(i)
    u0 = DiffPoly.var(Uj(0))
    f = DiffPoly.var(FTower(0))
    fu = DiffPoly.var(FTower(1))
    eP = e_minus1(P, m)
    rep = PSReport(
        index=i,
        e_phi=e_minus1(ph, m) - 2 * u0 * eP,
        ebar_phi=e_minus1_bar(ph, m) + 2 * f * P,
        linearized=e_minus1_bar(eP, m) + fu * P,
    )
    if strict and not rep.ok:
        raise PSIdentityError(f"identity failure at index {i}")
    return rep


__all__ = ["PSChain", "PSIdentityError", "PSReport", "ps_chain", "verify_ps"]
